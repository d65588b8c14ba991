#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dpoly/disorder.hpp"
#include "dpoly/moment_flow.hpp"
#include "dpoly/rational.hpp"

namespace dpoly {

// Exact combinatorics of the level-n graph: bond_count = (b s)^n,
// path_length = s^n, and the path count follows G_{k+1} = b G_k^s from
// G_0 = 1. Big integers throughout; the count doubles in bit length every
// level, so s^n is capped.
struct GraphStats {
    int b = 2;
    int s = 2;
    int n = 0;
    BigInt bond_count;
    BigInt path_count;
    BigInt path_length;
};

GraphStats graph_stats(int b, int s, int n);

// One exact-in-distribution sample of the normalized weight W_n on the
// critical (s = b) graph: level-0 values are e^{beta omega - Lambda} with a
// fresh counter-indexed draw per bond, level k+1 averages b products of b
// level-k values. Deterministic in (model, beta, n, seed).
double sample_w_exact(int b, const DisorderModel& model, double beta, int n,
                      std::uint64_t seed, std::uint64_t draw_budget = (1ull << 26));

// Exact moments of W_n by enumeration over every disorder configuration of
// a two-point law; rational arithmetic end to end with the mean exactly 1.
MomentVectorExact enumerate_small(int b, const DisorderModel& model, double beta, int n,
                                  int m_max, std::uint64_t config_budget = 10000000);

struct SamplePool {
    int generation = 0;
    std::uint64_t seed = 0;
    std::vector<double> samples;
};

// Population-dynamics approximation of the weight recursion: every new
// sample averages b products of b members drawn (with replacement, counter-
// indexed) from the previous generation. worker_count only partitions the
// work; the output is bit-identical for every value.
SamplePool pool_evolve(int b, const DisorderModel& model, double beta, int n_generations,
                       std::size_t pool_size, std::uint64_t seed, int worker_count = 1);

struct EmpiricalMoments {
    int m_max = 2;
    std::size_t count = 0;
    double mean = 0;
    double mean_se = 0;
    std::vector<double> values;  // centered moments 2..m_max about the sample mean
    std::vector<double> ses;     // batch-means standard errors (sqrt(N) batches)
};

EmpiricalMoments empirical_moments(const std::vector<double>& samples, int m_max);

}  // namespace dpoly
