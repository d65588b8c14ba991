#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dpoly/polynomial.hpp"
#include "dpoly/simulate.hpp"

namespace dpoly {

// Shortest decimal form that parses back to the identical binary64 (never
// more than 17 significant digits).
std::string format_sig17(double x);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

// Header row, a '#' comment carrying the config hash, then data rows.
// UTF-8, '.' decimal separator, \n line ends.
std::string csv_to_string(const CsvTable& table, const std::string& config_comment);

std::uint64_t fnv1a_hash(const std::string& data);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// {"b":int,"m":int,"terms":[{"exp":[e2..em],"coef":"num/den"}]} with terms
// in graded-lex order; serialize(parse(text)) == text for emitted files.
std::string polynomial_to_json(const SparsePolynomial& p, int b, int m);
SparsePolynomial polynomial_from_json(const std::string& text, int* b_out = nullptr,
                                      int* m_out = nullptr);

// Pool snapshot: 16-byte header (magic "WPL1", u32 generation, u64 count),
// then count little-endian binary64 samples. The in-memory seed is lineage
// metadata and is not part of the interchange format.
void save_pool(const std::string& path, const SamplePool& pool);
SamplePool load_pool(const std::string& path);

}  // namespace dpoly
