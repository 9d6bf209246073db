#include <doctest.h>

#include "conc/constructions.hpp"
#include "conc/json_io.hpp"
#include "conc/rng.hpp"

using namespace conc;
using nlohmann::json;

TEST_CASE("polynomial round trip is bit exact on integer fields") {
    SplitMix64 rng(64);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<SparseTrigPoly::Term> terms;
        Frequency h = 0;
        for (int i = 0; i < 12; ++i) {
            h += 1 + static_cast<Frequency>(rng.next_below(1'000'000'000ULL));
            terms.push_back({h, trial % 2 == 0 ? 1.0 : 0.25 + rng.next_double()});
        }
        const PolyClass cls = trial % 2 == 0 ? PolyClass::Idempotent : PolyClass::PositiveDefinite;
        const SparseTrigPoly f = SparseTrigPoly::make(terms, cls);
        const SparseTrigPoly g = poly_from_json(to_json(f));
        REQUIRE(g.spectrum_size() == f.spectrum_size());
        CHECK(g.poly_class() == f.poly_class());
        for (std::size_t i = 0; i < f.spectrum_size(); ++i) {
            CHECK(g.terms()[i].freq == f.terms()[i].freq);  // bit exact
            CHECK(g.terms()[i].coeff == f.terms()[i].coeff);
        }
    }
    // a frequency near the cap survives untouched
    const SparseTrigPoly big = SparseTrigPoly::idempotent({kMaxFrequency - 7, kMaxFrequency});
    CHECK(poly_from_json(to_json(big)).terms()[1].freq == kMaxFrequency);
}

TEST_CASE("interval union round trip") {
    const IntervalUnion E = IntervalUnion::symmetric_pair(1.0 / 3.0, 0.02);
    const IntervalUnion F = intervals_from_json(to_json(E));
    REQUIRE(F.intervals().size() == E.intervals().size());
    CHECK(F.symmetric_flag() == E.symmetric_flag());
    for (std::size_t i = 0; i < E.intervals().size(); ++i) {
        CHECK(F.intervals()[i].left == E.intervals()[i].left);
        CHECK(F.intervals()[i].right == E.intervals()[i].right);
    }
}

TEST_CASE("malformed documents are rejected with InvalidArgument") {
    CHECK_THROWS_AS((void)poly_from_json(json{{"class", "idempotent"}}), Error);
    CHECK_THROWS_AS((void)poly_from_json(json{{"coeffs", json::array({json::array({1})})},
                                              {"class", "idempotent"}}),
                    Error);
    CHECK_THROWS_AS((void)poly_from_json(json{{"coeffs", json::array()}, {"class", "nope"}}),
                    Error);
    CHECK_THROWS_AS((void)intervals_from_json(json{{"symmetric", true}}), Error);
}

TEST_CASE("error objects carry machine-readable codes") {
    const Error e(ErrorCode::IllegalRegime, "testing");
    const json j = error_json(e);
    CHECK(j.at("error").at("code").get<std::string>() == "IllegalRegime");
}
