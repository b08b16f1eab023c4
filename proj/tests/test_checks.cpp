#include "doctest.h"
#include "subdiv/checks.hpp"

using namespace subdiv;

namespace {

PosetPtr ptr(RankedPoset p) { return std::make_shared<const RankedPoset>(std::move(p)); }

Sfs bary_of(PosetPtr base) {
    Barycentric b = barycentric(*base);
    return Sfs::validate(ptr(std::move(b.poset)), base, b.sigma, SfsFlags{true, true});
}

void require_clean(const Report& r) {
    for (const auto& c : r.results()) {
        INFO(c.name << ": " << c.detail);
        CHECK(c.passed);
    }
    CHECK(!r.results().empty());
}

}  // namespace

TEST_CASE("battery passes on identities and barycentric subdivisions") {
    for (int n = 0; n <= 4; ++n) {
        Sfs id = Sfs::identity(ptr(boolean_algebra(n)));
        require_clean(check_sfs(id));
        Sfs b = bary_of(ptr(boolean_algebra(n)));
        require_clean(check_sfs(b));
    }
}

TEST_CASE("battery passes on a composed pair") {
    Sfs sigma = bary_of(ptr(boolean_algebra(2)));
    Sfs tau = bary_of(sigma.gamma_ptr());
    require_clean(check_composition(tau, sigma));
    Sfs both = compose(tau, sigma);
    require_clean(check_sfs(both));
}

TEST_CASE("report bookkeeping") {
    Report r;
    r.add("a", true);
    r.expect_equal("b", LaurentPoly(1), LaurentPoly(2));
    CHECK(r.failures() == 1);
    CHECK_FALSE(r.all_passed());
    CHECK(r.results()[1].detail == "got 1, expected 2");
    Report outer;
    outer.merge(r, "inner: ");
    CHECK(outer.results()[0].name == "inner: a");
}
