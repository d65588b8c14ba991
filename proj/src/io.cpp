#include "dpoly/io.hpp"

#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "dpoly/errors.hpp"
#include "dpoly/rational.hpp"

namespace dpoly {

std::string format_sig17(double x) {
    char buf[40];
    const std::to_chars_result res = std::to_chars(buf, buf + sizeof(buf), x);
    if (res.ec != std::errc()) throw Error("format_sig17: conversion failed");
    return std::string(buf, res.ptr);
}

std::uint64_t fnv1a_hash(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const unsigned char ch : data) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string csv_to_string(const CsvTable& table, const std::string& config_comment) {
    std::ostringstream out;
    out << "# " << config_comment << "\n";
    for (std::size_t i = 0; i < table.header.size(); ++i)
        out << (i ? "," : "") << table.header[i];
    out << "\n";
    for (const std::vector<std::string>& row : table.rows) {
        if (row.size() != table.header.size())
            throw Error("csv_to_string: row width differs from header");
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << "\n";
    }
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("write_text_file: cannot open " + path);
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw Error("write_text_file: short write to " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("read_text_file: cannot open " + path);
    std::ostringstream out;
    out << f.rdbuf();
    return out.str();
}

std::string polynomial_to_json(const SparsePolynomial& p, int b, int m) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [exps, coef] : p.terms()) {
        nlohmann::json term;
        term["exp"] = exps;
        term["coef"] = to_fraction_string(coef);
        terms.push_back(std::move(term));
    }
    nlohmann::json doc;
    doc["b"] = b;
    doc["m"] = m;
    doc["terms"] = std::move(terms);
    return doc.dump(2) + "\n";
}

SparsePolynomial polynomial_from_json(const std::string& text, int* b_out, int* m_out) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("polynomial_from_json: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("b") || !doc.contains("m") || !doc.contains("terms"))
        throw ConfigError("polynomial_from_json: missing b, m, or terms");
    const int b = doc["b"].get<int>();
    const int m = doc["m"].get<int>();
    if (m < 2) throw ConfigError("polynomial_from_json: m must be >= 2");
    SparsePolynomial p(m);
    for (const nlohmann::json& term : doc["terms"]) {
        const std::vector<int> exps = term.at("exp").get<std::vector<int>>();
        if (exps.size() != static_cast<std::size_t>(m - 1))
            throw ConfigError("polynomial_from_json: exponent vector length mismatch");
        p.add_term(exps, rational_from_string(term.at("coef").get<std::string>()));
    }
    if (b_out) *b_out = b;
    if (m_out) *m_out = m;
    return p;
}

namespace {

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint32_t get_u32(const std::string& in, std::size_t pos) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
        v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
    return v;
}

std::uint64_t get_u64(const std::string& in, std::size_t pos) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
    return v;
}

}  // namespace

void save_pool(const std::string& path, const SamplePool& pool) {
    std::string out;
    out.reserve(16 + 8 * pool.samples.size());
    out += "WPL1";
    put_u32(out, static_cast<std::uint32_t>(pool.generation));
    put_u64(out, pool.samples.size());
    for (const double x : pool.samples) {
        std::uint64_t bits;
        std::memcpy(&bits, &x, 8);
        put_u64(out, bits);
    }
    write_text_file(path, out);
}

SamplePool load_pool(const std::string& path) {
    const std::string in = read_text_file(path);
    if (in.size() < 16 || in.compare(0, 4, "WPL1") != 0)
        throw ConfigError("load_pool: not a pool snapshot: " + path);
    SamplePool pool;
    pool.generation = static_cast<int>(get_u32(in, 4));
    const std::uint64_t count = get_u64(in, 8);
    if (in.size() != 16 + 8 * count)
        throw ConfigError("load_pool: truncated pool snapshot: " + path);
    pool.samples.resize(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::uint64_t bits = get_u64(in, 16 + 8 * i);
        std::memcpy(&pool.samples[i], &bits, 8);
    }
    return pool;
}

}  // namespace dpoly
