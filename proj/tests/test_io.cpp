#include <doctest.h>

#include <cstdio>
#include <string>
#include <vector>

#include "dpoly/io.hpp"
#include "dpoly/moment_poly.hpp"

using namespace dpoly;

namespace {

std::string temp_path(const char* name) {
    return std::string("/tmp/dpoly_test_") + name;
}

}  // namespace

TEST_CASE("shortest round-trip decimal formatting") {
    for (double x : {0.1, 1.0 / 3.0, 2.0, -0.875, 1e300, 5e-324, 0.0,
                     0.1 + 0.2, 123456789.123456789}) {
        const std::string s = format_sig17(x);
        // strtod, not stod: stod throws on the subnormal (ERANGE).
        CHECK(std::strtod(s.c_str(), nullptr) == x);
        CHECK(s.size() <= 24);
    }
    CHECK(format_sig17(2.0) == "2");
    CHECK(format_sig17(0.5) == "0.5");
}

TEST_CASE("csv layout: header, config comment, then rows") {
    CsvTable t;
    t.header = {"a", "b"};
    t.rows = {{"1", "2"}, {"3", "4"}};
    const std::string s = csv_to_string(t, "v1 test config-hash deadbeef");
    CHECK(s == "# v1 test config-hash deadbeef\na,b\n1,2\n3,4\n");
}

TEST_CASE("hash of the canonical config is stable") {
    // FNV-1a 64-bit reference values.
    CHECK(fnv1a_hash("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a_hash("a") == 0xaf63dc4c8601ec8cull);
    CHECK(fnv1a_hash("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("polynomial json round-trips byte for byte") {
    const MomentPolynomials& mp = moment_polynomials(2, 4);
    const std::string text = polynomial_to_json(mp.p, 2, 4);
    int b = 0, m = 0;
    const SparsePolynomial parsed = polynomial_from_json(text, &b, &m);
    CHECK(b == 2);
    CHECK(m == 4);
    CHECK(parsed == mp.p);
    CHECK(polynomial_to_json(parsed, b, m) == text);
}

TEST_CASE("malformed polynomial json is rejected") {
    CHECK_THROWS(polynomial_from_json("{"));
    CHECK_THROWS(polynomial_from_json("{\"b\":2}"));
    CHECK_THROWS(polynomial_from_json(
        "{\"b\":2,\"m\":3,\"terms\":[{\"exp\":[1],\"coef\":\"1/0\"}]}"));
}

TEST_CASE("pool snapshots survive a save/load cycle") {
    SamplePool pool;
    pool.generation = 9;
    pool.seed = 1234;
    pool.samples = {1.0, 0.5, 2.25, 1e-300, 7.75};
    const std::string path = temp_path("pool.bin");
    save_pool(path, pool);
    const SamplePool back = load_pool(path);
    CHECK(back.generation == 9);
    CHECK(back.samples == pool.samples);
    std::remove(path.c_str());
}

TEST_CASE("corrupt pool header is rejected") {
    const std::string path = temp_path("garbage.bin");
    write_text_file(path, "not a pool file");
    CHECK_THROWS(load_pool(path));
    std::remove(path.c_str());
}

TEST_CASE("text files round-trip") {
    const std::string path = temp_path("roundtrip.txt");
    const std::string content = "line1\nline2\n";
    write_text_file(path, content);
    CHECK(read_text_file(path) == content);
    std::remove(path.c_str());
    CHECK_THROWS(read_text_file(path));
}
