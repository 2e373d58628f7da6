#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "riot/catalog.hpp"
#include "riot/error.hpp"

using namespace riot;
using namespace riot::catalog;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (Error const& e) {
        return e.code();
    }
    FAIL("expected riot::Error");
    return ErrorCode::MalformedInput;
}

} // namespace

TEST_CASE("default catalog holds the eight EC2 types") {
    auto c = default_catalog();
    REQUIRE(c.size() == 8);
    CHECK(c.billing_seconds() == 3600.0);

    struct Row {
        char const* name;
        double cu, bw, price;
    };
    Row const rows[] = {{"m3.medium", 3.75, 85.2, 0.067}, {"m4.large", 7.5, 35.2, 0.1},
                        {"m3.large", 7.5, 85.2, 0.133},   {"m4.xlarge", 15, 68, 0.2},
                        {"m3.xlarge", 15, 131, 0.266},    {"m4.2xlarge", 30, 131, 0.4},
                        {"m3.2xlarge", 40, 131, 0.532},   {"m4.4xlarge", 45, 181, 0.8}};
    for (std::size_t r = 0; r < 8; ++r) {
        CAPTURE(r);
        auto const& t = c.type(r);
        CHECK(t.name == rows[r].name);
        CHECK(t.compute_units == rows[r].cu);
        CHECK(t.bandwidth_mbps == rows[r].bw);
        CHECK(t.price_per_hour == rows[r].price);
        CHECK(c.rank(rows[r].name) == r);
    }
    CHECK(c.fastest() == c.index_of("m4.4xlarge"));
    CHECK(!c.find("t2.micro"));
    CHECK(code_of([&] { (void)c.index_of("t2.micro"); }) == ErrorCode::UnknownType);
}

TEST_CASE("user catalogs are ranked by price then name") {
    auto c = load_catalog(R"({"types":[{"name":"big","compute_units":4,"bandwidth_mbps":10,"price_per_hour":0.2},
                                      {"name":"small","compute_units":1,"bandwidth_mbps":10,"price_per_hour":0.1}]})");
    CHECK(c.rank("small") == 0);
    CHECK(c.rank("big") == 1);

    auto tie = Catalog({{"b", 1, 1, 0.1}, {"a", 2, 1, 0.1}});
    CHECK(tie.rank("a") == 0);
    CHECK(tie.rank("b") == 1);
}

TEST_CASE("CSV catalogs") {
    auto c = load_catalog("name,compute_units,bandwidth_mbps,price_per_hour\n"
                          "x,2,50,0.3\n"
                          "y,1,25,0.15\n");
    CHECK(c.size() == 2);
    CHECK(c.type(0).name == "y");
    CHECK(c.type(1).bandwidth_mbps == 50.0);
    CHECK(code_of([] { load_catalog("name,compute_units,bandwidth_mbps,price_per_hour\nx,2,50\n"); }) ==
          ErrorCode::MalformedInput);
}

TEST_CASE("catalog validation") {
    CHECK(code_of([] { Catalog({{"a", 1, 1, 1}, {"a", 2, 2, 2}}); }) == ErrorCode::DuplicateName);
    CHECK(code_of([] { Catalog({{"a", 0, 1, 1}}); }) == ErrorCode::NonPositiveField);
    CHECK(code_of([] { Catalog({{"a", 1, -1, 1}}); }) == ErrorCode::NonPositiveField);
    CHECK(code_of([] { Catalog({{"a", 1, 1, 0}}); }) == ErrorCode::NonPositiveField);
    CHECK(code_of([] { Catalog({{"a", 1, 1, 1}}, 0.0); }) == ErrorCode::NonPositiveField);
    CHECK(code_of([] { Catalog({}); }) == ErrorCode::MalformedInput);
    CHECK(code_of([] { load_catalog("{\"types\": 5}"); }) == ErrorCode::MalformedInput);
}

TEST_CASE("JSON round trip and hash") {
    auto c = default_catalog();
    auto again = load_catalog(to_json(c));
    CHECK(again.size() == c.size());
    CHECK(again.hash() == c.hash());
    CHECK(c.hash().size() == 16);

    auto other = Catalog({{"a", 1, 1, 1}});
    CHECK(other.hash() != c.hash());
}
