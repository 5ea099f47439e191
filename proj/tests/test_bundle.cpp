#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace rlsheaf;

namespace {

/// Oracle: some bijection between the carriers preserves every operation.
bool isomorphic(const ResiduatedLattice& a, const ResiduatedLattice& b) {
    if (a.size() != b.size()) return false;
    std::vector<Elem> perm(a.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        if (is_rl_morphism(perm, a, b)) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

std::vector<RLBundle> etale_fixtures() {
    return {fx::etspecha4(), fx::etmaxda6(), fx::etminpa8(), fx::sierpinski_diagonal()};
}

}  // namespace

TEST(Bundle, ProjectionMustBeContinuous) {
    auto s = fx::sierpinski();
    EXPECT_THROW(Bundle::create(SpaceMap(s, s, {1, 0})), PreconditionError);
}

TEST(Bundle, KernelPairs) {
    auto e = fx::etspecha4();
    auto k = kernel_pair(e.bundle);
    EXPECT_EQ(k.space->size(), 8u);
    auto s = fx::sierpinski();
    auto kid = kernel_pair(identity_bundle(s));
    EXPECT_EQ(kid.space->size(), 2u);
    EXPECT_TRUE(is_homeomorphism(kid.proj1));
    auto d3 = fx::discrete({"u", "v", "w"});
    auto kp = kernel_pair(Bundle::create(SpaceMap(d3, fx::point(), {0, 0, 0})));
    EXPECT_EQ(kp.space->size(), 9u);
}

TEST(Bundle, Stalks) {
    auto e = fx::etspecha4();
    auto st = stalk(e.bundle, "F2");
    EXPECT_EQ(st.points(), (std::vector<Id>{"0_1", "1_1"}));
    EXPECT_TRUE(st.is_discrete());
    for (const auto& rb : etale_fixtures())
        for (const auto& p : rb.base()->points()) EXPECT_TRUE(stalk(rb.bundle, p).is_discrete());
    auto d2 = fx::discrete({"u", "v"});
    auto b = Bundle::create(SpaceMap(fx::point(), d2, {0}));
    EXPECT_EQ(stalk(b, "v").size(), 0u);
}

TEST(Bundle, StalkOpsRoundTripThroughProperMaps) {
    for (const auto& rb : {fx::etspecha4(), fx::etminpa8(), fx::indiscrete_a2(), fx::sierpinski_diagonal()}) {
        auto k = kernel_pair(rb.bundle);
        std::array<SpaceMap, 4> maps;
        for (int o = 0; o < 4; ++o) {
            maps[o] = proper_map_from_stalk_ops(rb.bundle, k, rb.ops, kStalkOps[o]);
            EXPECT_TRUE(is_proper(rb.bundle, k, maps[o]));
        }
        auto back = stalk_ops_from_proper_maps(rb.bundle, k, maps, constant_section(rb.bundle, rb.ops.zero),
                                               constant_section(rb.bundle, rb.ops.one));
        EXPECT_EQ(back, rb.ops);
    }
    // one-point stalks carry exactly one structure
    auto d2 = fx::discrete({"u", "v"});
    auto b = identity_bundle(d2);
    RLSpec one;
    one.carrier = {"z"};
    one.mul[{"z", "z"}] = "z";
    one.bot = one.top = "z";
    auto l = share(ResiduatedLattice::from_spec(one));
    auto ops = stalk_ops_from_lattices(b, {{"u", {l, {{"z", "u"}}}}, {"v", {l, {{"z", "v"}}}}});
    EXPECT_TRUE(verify_rl_bundle({b, ops}).ok());
}

TEST(Bundle, VerifyRlBundle) {
    EXPECT_TRUE(verify_rl_bundle(fx::etspecha4()).ok());
    EXPECT_TRUE(verify_rl_bundle(fx::etmaxda6()).ok());
    EXPECT_TRUE(verify_rl_bundle(fx::etminpa8()).ok());
    EXPECT_TRUE(verify_rl_bundle(fx::indiscrete_a2()).ok());
    EXPECT_TRUE(verify_rl_bundle(fx::sierpinski_diagonal()).ok());
    // gluing along a map that is not a morphism breaks continuity of ⊙ or ∨
    auto rb = fx::sierpinski_diagonal();
    std::vector<Subset> nb = rb.total()->min_nbhds();
    nb[4] = make_subset(6, {4, 1});  // 0_y now restricts to (0|1)
    auto total = share(FiniteSpace(rb.total()->points(), nb));
    auto b = Bundle::create(SpaceMap(total, rb.base(), rb.bundle.proj.table));
    auto bad = verify_rl_bundle({b, rb.ops});
    EXPECT_FALSE(bad.ok());
}

TEST(Bundle, IsEtale) {
    EXPECT_TRUE(is_etale(fx::etspecha4().bundle));
    EXPECT_FALSE(is_etale(fx::indiscrete_a2().bundle));
    EXPECT_TRUE(is_etale(identity_bundle(fx::sierpinski())));
    EXPECT_TRUE(is_etale(fx::sierpinski_diagonal().bundle));
}

TEST(Sections, Enumeration) {
    auto e = fx::etspecha4();
    EXPECT_EQ(global_sections(e.bundle).size(), 4u);
    auto none = sections(e.bundle, e.base()->subset({}));
    ASSERT_EQ(none.size(), 1u);
    EXPECT_EQ(section_id(e.bundle, none[0]), "{}");
    EXPECT_EQ(global_sections(fx::indiscrete_a2().bundle).size(), 2u);
    // sections over the closed point y of Sierpiński see the subspace topology
    auto sd = fx::sierpinski_diagonal();
    EXPECT_EQ(sections(sd.bundle, sd.base()->subset({"y"})).size(), 2u);
    EXPECT_EQ(sections(sd.bundle, sd.base()->subset({"x"})).size(), 4u);
    EXPECT_EQ(global_sections(sd.bundle).size(), 2u);
    for (const auto& s : global_sections(sd.bundle)) EXPECT_TRUE(is_section(sd.bundle, s));
}

TEST(Sections, ThroughPoint) {
    auto e = fx::etspecha4();
    for (std::size_t t = 0; t < e.total()->size(); ++t) {
        auto [u, s] = section_through_point(e.bundle, t);
        EXPECT_EQ(u.count(), 1u);
        EXPECT_EQ(s.values[e.bundle.over(t)], t);
    }
    auto s = fx::sierpinski();
    auto idb = identity_bundle(s);
    for (std::size_t t = 0; t < 2; ++t) {
        auto [u, sec] = section_through_point(idb, t);
        EXPECT_EQ(u, s->min_nbhd(t));
    }
    EXPECT_THROW(section_through_point(fx::indiscrete_a2().bundle, 0), PreconditionError);
}

TEST(Sections, Equalizers) {
    auto e = fx::etspecha4();
    auto g = global_sections(e.bundle);
    const auto& b = e.bundle;
    // {0_1, 0_2} and {0_1, 1_2} agree at F2 only
    Section s1{b.base->whole(), {b.total->require("0_1"), b.total->require("0_2")}};
    Section s2{b.base->whole(), {b.total->require("0_1"), b.total->require("1_2")}};
    auto eq = equalizer(b, s1, s2);
    EXPECT_EQ(eq.set, b.base->subset({"F2"}));
    EXPECT_TRUE(eq.open);
    EXPECT_TRUE(eq.clopen);
    EXPECT_EQ(equalizer(b, s1, s1).set, b.base->whole());
    Section s3{b.base->whole(), {b.total->require("1_1"), b.total->require("1_2")}};
    EXPECT_TRUE(equalizer(b, s1, s3).set.none());
}

TEST(Sections, ImageBasis) {
    auto e = fx::etspecha4();
    auto basis = section_image_basis(e.bundle);
    EXPECT_TRUE(is_basis(*e.total(), basis));
    for (std::size_t t = 0; t < e.total()->size(); ++t)
        EXPECT_NE(std::find(basis.begin(), basis.end(), make_subset(4, {t})), basis.end());
    auto s = fx::sierpinski();
    auto ib = section_image_basis(identity_bundle(s));
    EXPECT_EQ(ib, s->opens());
    auto d2 = fx::discrete({"t1", "t2"});
    auto fold = Bundle::create(SpaceMap(d2, fx::point(), {0, 0}));
    auto fb = section_image_basis(fold);
    EXPECT_EQ(fb, (std::vector<Subset>{d2->subset({}), d2->subset({"t1"}), d2->subset({"t2"})}));
}

TEST(Sections, PointwiseAlgebra) {
    auto e = fx::etspecha4();
    auto g = pointwise_rl_on_sections(e, e.base()->whole());
    EXPECT_EQ(g.algebra->size(), 4u);
    EXPECT_TRUE(isomorphic(*g.algebra, product(*fx::a2(), *fx::a2())));
    auto empty = pointwise_rl_on_sections(e, e.base()->subset({}));
    EXPECT_EQ(empty.algebra->size(), 1u);
    auto ind = pointwise_rl_on_sections(fx::indiscrete_a2(), fx::point()->whole());
    EXPECT_TRUE(isomorphic(*ind.algebra, *fx::a2()));
    auto sd = fx::sierpinski_diagonal();
    EXPECT_TRUE(isomorphic(*pointwise_rl_on_sections(sd, sd.base()->whole()).algebra, *fx::a2()));
}

TEST(Sections, BundleValidityGivesAlgebrasOnEverySubset) {
    for (const auto& rb : {fx::etspecha4(), fx::etmaxda6(), fx::sierpinski_diagonal(), fx::indiscrete_a2()}) {
        ASSERT_TRUE(verify_rl_bundle(rb).ok());
        const auto n = rb.base()->size();
        for (unsigned long bits = 0; bits < (1ul << n); ++bits)
            EXPECT_NO_THROW(pointwise_rl_on_sections(rb, Subset(n, bits)));
    }
}

TEST(Morphisms, IdentityAndBrokenSwap) {
    auto e = fx::etspecha4();
    EXPECT_TRUE(is_rl_bundle_morphism(identity_map(e.total()), e, e));
    // exchange 0 and 1 over F3: preserves neither constant
    std::vector<std::size_t> t(4);
    std::iota(t.begin(), t.end(), 0);
    std::swap(t[e.total()->require("0_2")], t[e.total()->require("1_2")]);
    SpaceMap h(e.total(), e.total(), t);
    EXPECT_TRUE(is_bundle_morphism(h, e.bundle, e.bundle));
    auto r = check_rl_bundle_morphism(h, e, e);
    ASSERT_FALSE(r.ok());
    EXPECT_NE(r.lines().front().find("F3"), std::string::npos);
    // 𝔄₄ stalk of etminpa8: a ↔ b swap keeps 0 and 1 but is an automorphism, so
    // instead collapse a,b ↦ a, which breaks ⊙ on that stalk
    auto m = fx::etminpa8();
    std::vector<std::size_t> c(m.total()->size());
    std::iota(c.begin(), c.end(), 0);
    c[m.total()->require("b_2")] = m.total()->require("a_2");
    SpaceMap col(m.total(), m.total(), c);
    EXPECT_FALSE(is_rl_bundle_morphism(col, m, m));
}

TEST(Morphisms, StalkwiseAndSquareFormsAgree) {
    for (const auto& rb : {fx::etspecha4(), fx::etminpa8(), fx::sierpinski_diagonal()})
        for (const auto& h : bundle_morphisms(rb.bundle, rb.bundle))
            EXPECT_EQ(is_rl_bundle_morphism(h, rb, rb), rl_bundle_square_commutes(h, rb, rb));
}

TEST(Morphisms, BetweenEtalesContinuousOpenLocalHomeo) {
    std::vector<Bundle> bs;
    for (const auto& rb : etale_fixtures()) bs.push_back(rb.bundle);
    bs.push_back(identity_bundle(fx::sierpinski()));
    for (const auto& a : bs)
        for (const auto& b : bs) {
            if (!(*a.base == *b.base) || a.total->size() > 6 || b.total->size() > 6) continue;
            Bundle b2{b.total, a.base, SpaceMap(b.total, a.base, b.proj.table)};
            std::vector<Subset> allowed;
            for (std::size_t t = 0; t < a.total->size(); ++t) allowed.push_back(b2.fibre(a.over(t)));
            std::size_t total = 1;
            for (const auto& al : allowed) total *= al.count();
            // every base-compatible map, continuous or not
            std::vector<std::size_t> table(a.total->size());
            for (std::size_t code = 0; code < total; ++code) {
                auto c = code;
                for (std::size_t t = 0; t < table.size(); ++t) {
                    auto opts = members(allowed[t]);
                    table[t] = opts[c % opts.size()];
                    c /= opts.size();
                }
                SpaceMap h(a.total, b2.total, table);
                const bool cont = is_continuous(h);
                EXPECT_EQ(cont, is_open_map(h));
                EXPECT_EQ(cont, is_local_homeomorphism(h));
            }
        }
}

TEST(Laws, EtaleTopologyIsFinalTopologyOfSections) {
    for (const auto& rb : etale_fixtures()) EXPECT_EQ(final_topology_of_sections(rb.bundle), *rb.total());
    EXPECT_EQ(final_topology_of_sections(identity_bundle(fx::sierpinski())), *fx::sierpinski());
}

TEST(Laws, RandomEtalesSatisfySectionLaws) {
    std::mt19937_64 rng(fx::seed() + 11);
    int etales = 0;
    for (int k = 0; k < 400 && etales < 40; ++k) {
        auto b = fx::random_bundle(rng, 1 + k % 3, 1 + k % 3 + (k / 3) % 3);
        if (!is_etale(b)) continue;
        ++etales;
        EXPECT_EQ(final_topology_of_sections(b), *b.total);
        EXPECT_TRUE(is_basis(*b.total, section_image_basis(b)));
        for (const auto& p : b.base->points()) EXPECT_TRUE(stalk(b, p).is_discrete());
        for (const auto& u : b.base->opens())
            for (const auto& v : b.base->opens()) {
                auto su = sections(b, u), sv = sections(b, v);
                for (const auto& s : su)
                    for (const auto& t : sv) {
                        auto eq = equalizer(b, s, t);
                        EXPECT_TRUE(eq.open);
                        if (b.total->is_discrete()) EXPECT_TRUE(eq.clopen);
                        EXPECT_TRUE(b.total->is_open(section_image(b, s)));
                    }
            }
    }
    EXPECT_GE(etales, 20);
}
