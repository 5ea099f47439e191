#include "fixtures.hpp"
#include "rlsheaf/spectra.hpp"

#include <gtest/gtest.h>

using namespace rlsheaf;

namespace {

SpectrumConfig config(const LatticeRef& l, PrimeFamily which, SpectrumFlavor fl,
                      const std::map<std::string, Id>& names) {
    auto family = prime_family(all_filters(l), which);
    std::vector<Id> labels;
    for (const auto& f : family) labels.push_back(names.at(l->format(f)));
    return SpectrumConfig(l, family, fl, labels);
}

std::set<std::vector<Id>> opens_set(const FiniteSpace& s) {
    auto v = opens_by_name(s);
    return {v.begin(), v.end()};
}

bool refines(const FiniteSpace& fine, const FiniteSpace& coarse) {
    for (const auto& o : coarse.opens())
        if (!fine.is_open(o)) return false;
    return true;
}

}  // namespace

TEST(Hull, Examples) {
    auto l = fx::a4();
    auto fl = all_filters(l);
    SpectrumConfig cfg(l, fl.spec(), SpectrumFlavor::hull);
    auto h = hull(cfg, l->subset({"a"}));
    ASSERT_EQ(h.count(), 1u);
    EXPECT_EQ(cfg.pi[h.find_first()], l->subset({"a", "1"}));
    EXPECT_TRUE(hull(cfg, l->subset({"1"})).all());
    EXPECT_EQ(dual_hull(cfg, l->subset({"a"})), ~h);
    EXPECT_EQ(kernel(cfg, Subset(cfg.size())), l->whole());
    EXPECT_EQ(kernel(cfg, ~Subset(cfg.size())), l->subset({"1"}));
}

TEST(Hull, RejectsNonPrimeFamilies) {
    auto l = fx::a4();
    EXPECT_THROW(SpectrumConfig(l, {l->subset({"1"})}, SpectrumFlavor::hull), PreconditionError);
}

TEST(SpectralSpace, SpecHullOfA4) {
    auto cfg = config(fx::a4(), PrimeFamily::spec, SpectrumFlavor::hull, {{"{1,a}", "F2"}, {"{1,b}", "F3"}});
    auto s = spectral_space(cfg);
    EXPECT_EQ(opens_set(s), (std::set<std::vector<Id>>{{}, {"F2"}, {"F3"}, {"F2", "F3"}}));
}

TEST(SpectralSpace, MaxDualOfA6) {
    auto cfg = config(fx::a6(), PrimeFamily::max, SpectrumFlavor::dual, {{"{1,a,b,d}", "F2"}, {"{1,c,d}", "F3"}});
    auto s = spectral_space(cfg);
    EXPECT_EQ(opens_set(s), (std::set<std::vector<Id>>{{}, {"F2"}, {"F3"}, {"F2", "F3"}}));
}

TEST(SpectralSpace, MinPatchOfA8FromFirstPrinciples) {
    auto cfg = config(fx::a8(), PrimeFamily::min, SpectrumFlavor::patch, {{"{1,c,e}", "F3"}, {"{1,f}", "F4"}});
    auto s = spectral_space(cfg);
    auto opens = opens_by_name(s);
    EXPECT_TRUE(verify_topology(s.points(), opens).ok());
    EXPECT_EQ(opens_set(s), (std::set<std::vector<Id>>{{}, {"F3"}, {"F4"}, {"F3", "F4"}}));
    // the family that mentions a non-minimal filter is not a topology on Min
    EXPECT_FALSE(verify_topology({"F3", "F4"}, {{}, {"F3"}, {"F4"}, {"F3", "F4"}, {"F2", "F3", "F4"}}).ok());
}

TEST(SpectralSpace, SpecOfA6AndA8) {
    // hull topology on Spec(𝔄₆): {1} lies in every hull of 1 only, so it is the generic point
    auto l6 = fx::a6();
    SpectrumConfig c6(l6, all_filters(l6).spec(), SpectrumFlavor::hull);
    auto s6 = spectral_space(c6);
    EXPECT_TRUE(verify_topology(s6.points(), opens_by_name(s6)).ok());
    EXPECT_EQ(s6.closure(s6.subset({"{1}"})), s6.whole());
    auto l8 = fx::a8();
    SpectrumConfig c8(l8, all_filters(l8).spec(), SpectrumFlavor::hull);
    auto s8 = spectral_space(c8);
    EXPECT_EQ(s8.closure(s8.subset({"{1,a,c,d,e,f}"})), s8.subset({"{1,a,c,d,e,f}"}));
}

TEST(Laws, HullSeesOnlyTheGeneratedFilter) {
    for (const auto& l : {fx::a4(), fx::a6(), fx::a8()}) {
        SpectrumConfig cfg(l, all_filters(l).spec(), SpectrumFlavor::hull);
        for (unsigned long bits = 0; bits < (1ul << l->size()); ++bits) {
            Subset x(l->size(), bits);
            EXPECT_EQ(hull(cfg, x), hull(cfg, generated_filter(*l, x)));
        }
    }
}

TEST(Laws, PatchRefinesBothAndMaxIsT1) {
    for (const auto& l : {fx::a2(), fx::a3(), fx::a4(), fx::a6(), fx::a8()}) {
        auto fl = all_filters(l);
        for (auto which : {PrimeFamily::spec, PrimeFamily::max, PrimeFamily::min}) {
            auto fam = prime_family(fl, which);
            auto h = spectral_space(SpectrumConfig(l, fam, SpectrumFlavor::hull));
            auto d = spectral_space(SpectrumConfig(l, fam, SpectrumFlavor::dual));
            auto p = spectral_space(SpectrumConfig(l, fam, SpectrumFlavor::patch));
            EXPECT_TRUE(refines(p, h));
            EXPECT_TRUE(refines(p, d));
            if (which == PrimeFamily::max)
                for (std::size_t i = 0; i < h.size(); ++i) EXPECT_TRUE(h.is_closed(make_subset(h.size(), {i})));
        }
    }
}
