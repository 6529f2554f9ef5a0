#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <random>

#include "hmf/cache.hpp"
#include "hmf/errors.hpp"
#include "hmf/modforms.hpp"

using namespace hmf;
using namespace std::string_literals;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    fs::path d = fs::temp_directory_path() / ("hmf_cache_test_" + name + "_" + std::to_string(std::random_device{}()));
    fs::remove_all(d);
    return d;
}

} // namespace

TEST_CASE("fnv1a reference values", "[cache]") {
    CHECK(fnv1a("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cull);
    CHECK(fnv1a("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("round trip and misses", "[cache]") {
    auto dir = fresh_dir("rt");
    Cache c(dir);
    CHECK_FALSE(c.get("k").has_value());
    std::string payload = "line one\nline two\n\0binary"s;
    c.put("k", payload);
    CHECK(c.get("k") == payload);
    c.put("k", "replaced");
    CHECK(c.get("k") == "replaced");
    CHECK_FALSE(c.get("other").has_value());
    // no temporary files are left behind
    for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().extension() == ".entry");
    // a schema bump invalidates everything
    Cache bumped(dir, kCacheSchema + 1);
    CHECK_FALSE(bumped.get("k").has_value());
    fs::remove_all(dir);
}

TEST_CASE("corruption", "[cache]") {
    auto dir = fresh_dir("bad");
    Cache c(dir);
    c.put("k", "payload");
    {
        std::fstream f(c.path_for("k"), std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(-1, std::ios::end);
        f.put('X');
    }
    try {
        c.get("k");
        FAIL("corruption not detected");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::CacheCorrupt);
    }
    int calls = 0;
    auto compute = [&] {
        ++calls;
        return std::string("payload");
    };
    CHECK(c.get_or_compute("k", compute) == "payload");
    CHECK(calls == 1);
    CHECK(c.get_or_compute("k", compute) == "payload");
    CHECK(calls == 1);
    // truncated header
    { std::ofstream(c.path_for("k"), std::ios::trunc) << "schema=1\n"; }
    try {
        c.get("k");
        FAIL("truncation not detected");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::CacheCorrupt);
    }
    fs::remove_all(dir);
}

TEST_CASE("cached expansions reproduce exactly", "[cache]") {
    auto dir = fresh_dir("exp");
    Cache c(dir);
    auto F = make_field(5);
    auto E = eisenstein(F, 4, 12).f;
    std::string key = "eisenstein D=5 k=4 N=12";
    c.put(key, to_json(E));
    auto back = expansion_from_json(F, *c.get(key));
    CHECK(back.coeffs() == E.coeffs());
    CHECK(back.const_term() == E.const_term());
    fs::remove_all(dir);
}
