#include "dpoly/simulate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "dpoly/errors.hpp"
#include "dpoly/philox.hpp"

namespace dpoly {

namespace {

// omega drawn from the model's standardized law using one Philox block.
double omega_from_block(const DisorderModel& model, const PhiloxBlock& blk) {
    switch (model.kind) {
        case DisorderKind::standard_gaussian:
            return normal_pair(blk).first;
        case DisorderKind::rademacher:
            return (philox_u64(blk, 0) >> 63) ? -1.0 : 1.0;
        case DisorderKind::standardized_bernoulli: {
            const double s = std::sqrt(model.p * (1.0 - model.p));
            const double u = uniform_from_bits(philox_u64(blk, 0));
            return u < model.p ? (1.0 - model.p) / s : -model.p / s;
        }
        case DisorderKind::standardized_uniform: {
            const double u = uniform_from_bits(philox_u64(blk, 0));
            return std::sqrt(3.0) * (2.0 * u - 1.0);
        }
    }
    throw DomainError("omega_from_block: unknown disorder kind");
}

double weight_from_block(const DisorderModel& model, double beta, double lam,
                         const PhiloxBlock& blk) {
    return std::exp(beta * omega_from_block(model, blk) - lam);
}

double sample_rec(int b, int level, const DisorderModel& model, double beta, double lam,
                  std::uint64_t seed, std::uint32_t& bond) {
    if (level == 0)
        return weight_from_block(model, beta, lam, philox_block(seed, 0, 0, bond++, 0));
    double sum = 0;
    for (int i = 0; i < b; ++i) {
        double prod = 1;
        for (int j = 0; j < b; ++j)
            prod *= sample_rec(b, level - 1, model, beta, lam, seed, bond);
        sum += prod;
    }
    return sum / b;
}

// W(config) for one assignment of bond weights, recursing in the same DFS
// bond order the samplers use.
Rational eval_w(int b, int s, int level, const std::vector<Rational>& w, std::size_t& pos) {
    if (level == 0) return w[pos++];
    Rational sum = 0;
    for (int i = 0; i < b; ++i) {
        Rational prod = 1;
        for (int j = 0; j < s; ++j) prod *= eval_w(b, s, level - 1, w, pos);
        sum += prod;
    }
    return sum / b;
}

}  // namespace

GraphStats graph_stats(int b, int s, int n) {
    if (b < 2 || s < 1) throw DomainError("graph_stats: need b >= 2 and s >= 1");
    if (n < 0) throw DomainError("graph_stats: n must be >= 0");
    if (n * std::log2(static_cast<double>(s)) > 24)
        throw CapExceeded("graph_stats: path count would exceed 2^24 bits");
    GraphStats g;
    g.b = b;
    g.s = s;
    g.n = n;
    g.bond_count = 1;
    g.path_length = 1;
    g.path_count = 1;
    for (int k = 0; k < n; ++k) {
        g.bond_count *= b * s;
        g.path_length *= s;
        BigInt pow = 1;
        for (int j = 0; j < s; ++j) pow *= g.path_count;
        g.path_count = BigInt(b) * pow;
    }
    return g;
}

double sample_w_exact(int b, const DisorderModel& model, double beta, int n,
                      std::uint64_t seed, std::uint64_t draw_budget) {
    if (b < 2) throw DomainError("sample_w_exact: b must be >= 2");
    if (n < 0) throw DomainError("sample_w_exact: n must be >= 0");
    if (!(std::fabs(beta) <= model.beta_max()))
        throw DomainError("sample_w_exact: |beta| exceeds the model cap");
    const std::uint64_t per = static_cast<std::uint64_t>(b) * b;
    std::uint64_t bonds = 1;
    for (int k = 0; k < n; ++k) {
        if (bonds > draw_budget / per)
            throw BudgetExceeded("sample_w_exact: bond draws exceed the budget");
        bonds *= per;
    }
    if (bonds > 0xffffffffull)
        throw BudgetExceeded("sample_w_exact: bond indices exceed 32 bits");
    const double lam = log_mgf(model, beta);
    std::uint32_t bond = 0;
    return sample_rec(b, n, model, beta, lam, seed, bond);
}

MomentVectorExact enumerate_small(int b, const DisorderModel& model, double beta, int n,
                                  int m_max, std::uint64_t config_budget) {
    if (b < 2) throw DomainError("enumerate_small: b must be >= 2");
    if (n < 0) throw DomainError("enumerate_small: n must be >= 0");
    if (m_max < 2) throw DomainError("enumerate_small: m_max must be >= 2");
    const TwoPointExact tp = exact_two_point(model, beta);

    std::uint64_t bond_count = 1;
    for (int k = 0; k < n; ++k) {
        bond_count *= static_cast<std::uint64_t>(b) * b;
        if (bond_count > 62)
            throw CapExceeded("enumerate_small: configuration count exceeds the budget");
    }
    if ((1ull << bond_count) > config_budget)
        throw CapExceeded("enumerate_small: configuration count exceeds the budget");
    const int bonds = static_cast<int>(bond_count);

    // Per-bond weight values indexed by the config bit; probability of a
    // config factorizes, so popcount gives it in two table lookups.
    std::vector<Rational> p_hi_pow(bonds + 1), p_lo_pow(bonds + 1);
    p_hi_pow[0] = 1;
    p_lo_pow[0] = 1;
    for (int k = 1; k <= bonds; ++k) {
        p_hi_pow[k] = p_hi_pow[k - 1] * tp.p_hi;
        p_lo_pow[k] = p_lo_pow[k - 1] * tp.p_lo;
    }

    std::vector<Rational> acc(m_max - 1, Rational(0));
    std::vector<Rational> w(bonds);
    const std::uint64_t configs = 1ull << bonds;
    for (std::uint64_t cfg = 0; cfg < configs; ++cfg) {
        for (int i = 0; i < bonds; ++i) w[i] = (cfg >> i) & 1 ? tp.w_lo : tp.w_hi;
        std::size_t pos = 0;
        const Rational dev = eval_w(b, b, n, w, pos) - 1;
        const int ones = std::popcount(cfg);
        const Rational prob = p_hi_pow[bonds - ones] * p_lo_pow[ones];
        Rational powm = dev * dev;
        for (int m = 2; m <= m_max; ++m) {
            acc[m - 2] += prob * powm;
            powm *= dev;
        }
    }
    MomentVectorExact out;
    out.m_max = m_max;
    out.values = std::move(acc);
    return out;
}

SamplePool pool_evolve(int b, const DisorderModel& model, double beta, int n_generations,
                       std::size_t pool_size, std::uint64_t seed, int worker_count) {
    if (b < 2 || b > 8) throw DomainError("pool_evolve: b must be in [2, 8]");
    if (n_generations < 0) throw DomainError("pool_evolve: n_generations must be >= 0");
    if (pool_size < 1000) throw DomainError("pool_evolve: pool_size must be >= 1000");
    if (pool_size > (1ull << 32)) throw DomainError("pool_evolve: pool_size exceeds 2^32");
    if (worker_count < 1 || worker_count > 256)
        throw DomainError("pool_evolve: worker_count out of range");
    if (!(std::fabs(beta) <= model.beta_max()))
        throw DomainError("pool_evolve: |beta| exceeds the model cap");

    const double lam = log_mgf(model, beta);
    std::vector<double> cur(pool_size), next(pool_size);
    for (std::size_t i = 0; i < pool_size; ++i)
        cur[i] = weight_from_block(model, beta, lam,
                                   philox_block(seed, 0, static_cast<std::uint32_t>(i), 0, 0));

    // The pool represents the mean-normalized weight, so each generation is
    // divided by its empirical mean. Without this the recursion squares any
    // sampling error in the mean (E[next] = E[cur]^b per sample), and the
    // pool scale drifts doubly exponentially in the generation count.
    // Serial summation keeps the result independent of worker count.
    auto renormalize = [](std::vector<double>& pool_values) {
        long double total = 0;
        for (const double v : pool_values) total += v;
        const double mean = static_cast<double>(total / pool_values.size());
        if (!(mean > 0)) return; // degenerate pool (beta = 0 gives all ones, never hits this)
        for (double& v : pool_values) v /= mean;
    };
    renormalize(cur);

    const int draws = b * b;            // ancestor indices per new sample
    const int blocks = (draws + 1) / 2; // two 64-bit words per block
    for (int g = 1; g <= n_generations; ++g) {
        auto evolve_range = [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                std::uint64_t bits[64];
                for (int k = 0; k < blocks; ++k) {
                    const PhiloxBlock blk = philox_block(
                        seed, static_cast<std::uint32_t>(g), static_cast<std::uint32_t>(i), 0,
                        static_cast<std::uint32_t>(k));
                    bits[2 * k] = philox_u64(blk, 0);
                    bits[2 * k + 1] = philox_u64(blk, 1);
                }
                double sum = 0;
                int d = 0;
                for (int branch = 0; branch < b; ++branch) {
                    double prod = 1;
                    for (int seg = 0; seg < b; ++seg)
                        prod *= cur[index_from_bits(bits[d++], pool_size)];
                    sum += prod;
                }
                next[i] = sum / b;
            }
        };
        if (worker_count == 1) {
            evolve_range(0, pool_size);
        } else {
            std::vector<std::thread> threads;
            const std::size_t chunk = (pool_size + worker_count - 1) / worker_count;
            for (int t = 0; t < worker_count; ++t) {
                const std::size_t lo = std::min(pool_size, t * chunk);
                const std::size_t hi = std::min(pool_size, lo + chunk);
                if (lo < hi) threads.emplace_back(evolve_range, lo, hi);
            }
            for (std::thread& t : threads) t.join();
        }
        cur.swap(next);
        renormalize(cur);
    }

    SamplePool pool;
    pool.generation = n_generations;
    pool.seed = seed;
    pool.samples = std::move(cur);
    return pool;
}

EmpiricalMoments empirical_moments(const std::vector<double>& samples, int m_max) {
    if (m_max < 2) throw DomainError("empirical_moments: m_max must be >= 2");
    const std::size_t n = samples.size();
    if (n < 100) throw TooFewSamples("empirical_moments: need at least 100 samples");

    auto centered = [&](std::size_t lo, std::size_t hi, std::vector<double>& out) {
        long double mean = 0;
        for (std::size_t i = lo; i < hi; ++i) mean += samples[i];
        mean /= (hi - lo);
        std::vector<long double> acc(m_max - 1, 0.0L);
        for (std::size_t i = lo; i < hi; ++i) {
            const long double dev = samples[i] - mean;
            long double p = dev * dev;
            for (int m = 2; m <= m_max; ++m) {
                acc[m - 2] += p;
                p *= dev;
            }
        }
        out.assign(1, static_cast<double>(mean));
        for (int m = 2; m <= m_max; ++m)
            out.push_back(static_cast<double>(acc[m - 2] / (hi - lo)));
    };

    EmpiricalMoments em;
    em.m_max = m_max;
    em.count = n;
    std::vector<double> whole;
    centered(0, n, whole);
    em.mean = whole[0];
    em.values.assign(whole.begin() + 1, whole.end());

    // Batch means: sqrt(N) batches, each evaluating the same statistic; the
    // SE is the batch standard deviation over sqrt(batch count).
    const std::size_t nb = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
    const std::size_t len = n / nb;
    std::vector<std::vector<double>> stats(nb);
    for (std::size_t t = 0; t < nb; ++t) centered(t * len, (t + 1) * len, stats[t]);
    em.ses.assign(m_max - 1, 0.0);
    for (int col = 0; col < m_max; ++col) {  // col 0 = mean, then moments
        long double avg = 0;
        for (std::size_t t = 0; t < nb; ++t) avg += stats[t][col];
        avg /= nb;
        long double var = 0;
        for (std::size_t t = 0; t < nb; ++t) {
            const long double d = stats[t][col] - avg;
            var += d * d;
        }
        var /= (nb - 1);
        const double se = static_cast<double>(std::sqrt(var / nb));
        if (col == 0) em.mean_se = se;
        else em.ses[col - 1] = se;
    }
    return em;
}

}  // namespace dpoly
