#include <designlat/complex.hpp>
#include <designlat/errors.hpp>
#include <designlat/extension.hpp>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace designlat;

namespace {

std::uint64_t falling(std::uint64_t n, int k)
{
    std::uint64_t r = 1;
    for (int i = 0; i < k; ++i)
        r *= n - static_cast<std::uint64_t>(i);
    return r;
}

// Exhaustive downward-closure sweep.
bool downward_closed(const LabelledComplex& phi)
{
    for (auto b : subsets_of(phi.labels()))
        for (auto& psi : phi.level(b))
            for (auto sub : subsets_of(b))
                if (!phi.contains(psi.restrict(sub)))
                    return false;
    return true;
}

} // namespace

TEST(Labels, CanonicalOrder)
{
    auto subs = subsets_of(LabelSet::range(3));
    ASSERT_EQ(subs.size(), 8u);
    EXPECT_TRUE(subs[0].empty());
    EXPECT_EQ(subs[1], (LabelSet { 0 }));
    EXPECT_EQ(subs[4], (LabelSet { 0, 1 }));
    EXPECT_EQ(subs[7], LabelSet::range(3));
    EXPECT_TRUE(canonical_less(LabelSet { 2 }, LabelSet { 0, 1 }));
}

TEST(Labels, InjectionAlgebra)
{
    Injection a { { 0, 5 }, { 1, 3 } };
    EXPECT_TRUE(a.is_injective());
    EXPECT_EQ(a.inverse().at(5), 0);
    EXPECT_EQ(compose(a, a.inverse().restrict(LabelSet { 5 })).size(), 1);
    EXPECT_EQ(a.image_sorted(), (std::vector<Vertex> { 3, 5 }));
    EXPECT_TRUE(a.extends(a.restrict(LabelSet { 1 })));
    Injection b { { 2, 7 } };
    EXPECT_EQ(merge(a, b).size(), 3);
}

TEST(Complex, CompleteLevelSizes)
{
    for (std::size_t n : { 4u, 5u, 6u }) {
        auto phi = LabelledComplex::complete(3, n);
        for (auto b : subsets_of(phi.labels()))
            EXPECT_EQ(phi.level_size(b), falling(n, b.size()));
    }
}

TEST(Complex, DownwardClosedAfterConstruction)
{
    EXPECT_TRUE(downward_closed(LabelledComplex::complete(3, 5)));
    EXPECT_TRUE(downward_closed(LabelledComplex::partite(LabelSet::range(3), 6,
        { LabelSet { 0 }, LabelSet { 1 }, LabelSet { 2 } }, { { 0, 1 }, { 2, 3 }, { 4, 5 } })));
    EXPECT_TRUE(downward_closed(partite_template(LabelSet::range(3), 2)));
}

TEST(Complex, EmptyLevelHoldsOnlyTheEmptyMap)
{
    auto phi = LabelledComplex::complete(2, 4);
    auto l = phi.level(LabelSet());
    ASSERT_EQ(l.size(), 1u);
    EXPECT_TRUE(l[0].empty());
}

TEST(Restrict, VertexSubsetGivesCompleteComplexOnSubset)
{
    auto phi = LabelledComplex::complete(3, 5);
    auto sub = restrict_vertices(phi, { 0, 1, 2 });
    for (auto b : subsets_of(phi.labels()))
        EXPECT_EQ(sub.level_size(b), falling(3, b.size()));
    for (auto& psi : sub.level(3))
        for (auto v : psi.image_sequence())
            EXPECT_LT(v, 3);
}

TEST(Restrict, EmptyFilterIsIdentity)
{
    auto phi = LabelledComplex::complete(3, 5);
    auto same = restrict(phi, {});
    for (auto b : subsets_of(phi.labels()))
        EXPECT_EQ(same.level(b), phi.level(b));
}

TEST(Restrict, FilterOnePairLevel)
{
    auto phi = LabelledComplex::complete(2, 4);
    PartialSystem filter;
    auto b = LabelSet::range(2);
    for (auto& psi : phi.level(b))
        if (psi.image_sorted() == std::vector<Vertex> { 0, 1 })
            filter[b].insert(psi);
    auto sub = restrict(phi, filter);
    EXPECT_EQ(sub.level_size(b), 2u);
    EXPECT_EQ(sub.level_size(LabelSet { 0 }), 4u);
    EXPECT_EQ(sub.level_size(LabelSet { 1 }), 4u);
    EXPECT_TRUE(downward_closed(sub));
}

TEST(Restrict, ForeignLabelsRejected)
{
    auto phi = LabelledComplex::complete(2, 4);
    PartialSystem filter;
    filter[LabelSet { 5 }];
    EXPECT_THROW(restrict(phi, filter), DomainMismatch);
}

TEST(Neighbourhood, CompleteQuotient)
{
    auto phi = LabelledComplex::complete(3, 5);
    Injection base { { 2, 4 } };
    auto nb = neighbourhood(phi, base);
    EXPECT_EQ(nb.labels(), (LabelSet { 0, 1 }));
    EXPECT_EQ(nb.level_size(LabelSet { 0, 1 }), 12u);
    for (auto& psi : nb.level(2))
        EXPECT_FALSE(psi.maps_into(4));
}

TEST(Neighbourhood, EmptyBaseIsIdentity)
{
    auto phi = LabelledComplex::complete(3, 5);
    auto nb = neighbourhood(phi, Injection());
    for (auto b : subsets_of(phi.labels()))
        EXPECT_EQ(nb.level_size(b), phi.level_size(b));
}

TEST(Neighbourhood, OfRestrictedComplex)
{
    auto phi = LabelledComplex::complete(2, 4);
    PartialSystem filter;
    auto b = LabelSet::range(2);
    for (auto& psi : phi.level(b))
        if (psi.image_sorted() == std::vector<Vertex> { 0, 1 })
            filter[b].insert(psi);
    auto nb = neighbourhood(restrict(phi, filter), Injection { { 0, 0 } });
    auto l = nb.level(LabelSet { 1 });
    ASSERT_EQ(l.size(), 1u);
    EXPECT_EQ(l[0], (Injection { { 1, 1 } }));
}

TEST(Neighbourhood, InvalidBaseRejected)
{
    auto phi = LabelledComplex::partite(
        LabelSet::range(2), 4, { LabelSet { 0 }, LabelSet { 1 } }, { { 0, 1 }, { 2, 3 } });
    EXPECT_THROW(neighbourhood(phi, Injection { { 0, 3 } }), InvalidBase);
}

TEST(Template, Sizes)
{
    auto r1 = partite_template(LabelSet::range(2), 1);
    std::size_t total = 0;
    for (auto b : subsets_of(r1.labels()))
        total += r1.level_size(b);
    EXPECT_EQ(total, 4u);
    EXPECT_EQ(partite_template(LabelSet::range(2), 2).level_size(LabelSet::range(2)), 4u);
    auto r3 = partite_template(LabelSet::range(3), 2);
    for (auto b : subsets_of(r3.labels()))
        EXPECT_EQ(r3.level_size(b), 1u << b.size());
}

TEST(Extensions, SingleFreeVertex)
{
    const std::size_t n = 9;
    auto phi = LabelledComplex::complete(2, n);
    Extension e;
    e.labels = LabelSet::range(2);
    e.s = 1;
    e.generators = { Injection { { 0, 0 } }, Injection { { 1, 1 } } };
    e.frozen = { 0 };
    e.base = { { 0, 3 } };
    EXPECT_EQ(count_extensions(phi, e), Integer(static_cast<unsigned long>(n - 1)));
}

TEST(Extensions, EdgeToTriangle)
{
    auto phi = LabelledComplex::complete(3, 6);
    Extension e;
    e.labels = LabelSet::range(3);
    e.s = 1;
    e.generators = { Injection { { 0, 0 }, { 1, 1 }, { 2, 2 } } };
    e.frozen = { 0, 1 };
    e.base = { { 0, 2 }, { 1, 5 } };
    EXPECT_TRUE(base_is_embedding(phi, e));
    EXPECT_EQ(count_extensions(phi, e), 4);
}

TEST(Extensions, ConstraintToFanoTriangles)
{
    auto phi = LabelledComplex::complete(3, 7);
    std::vector<Injection> allowed;
    for (auto& t : oracle::fano_blocks())
        for (auto& m : all_bijections(LabelSet::range(3), LabelSet::range(3))) {
            Injection psi;
            for (int l = 0; l < 3; ++l)
                psi.set(l, static_cast<Vertex>(t[m.at(l)]));
            allowed.push_back(psi);
        }
    Extension e;
    e.labels = LabelSet::range(3);
    e.s = 1;
    Injection tri { { 0, 0 }, { 1, 1 }, { 2, 2 } };
    e.generators = { tri };
    e.frozen = { 0, 1 };
    e.base = { { 0, 1 }, { 1, 3 } }; // 1,3 lie in the block {1,3,5}
    auto constraint = constraint_from_set({ tri }, allowed);
    EXPECT_EQ(count_extensions(phi, e, { constraint }), 1);
    // a constraint never increases the count
    EXPECT_GE(count_extensions(phi, e), count_extensions(phi, e, { constraint }));
}

TEST(Extensions, NonPartiteTemplateRejected)
{
    Extension e;
    e.labels = LabelSet::range(2);
    e.s = 1;
    e.generators = { Injection { { 0, 1 } } };
    EXPECT_THROW(validate_template(e), ConstructionError);
}

TEST(Extendability, CompleteGraphRankOne)
{
    auto rep = extendability_certificate(LabelledComplex::complete(2, 10), Rational(4, 5), 1);
    EXPECT_FALSE(rep.budget_exhausted);
    EXPECT_GE(rep.min_density, Rational(4, 5));
    EXPECT_TRUE(rep.meets_threshold);
}

TEST(Extendability, EdgelessComplexHasDensityZero)
{
    // only vertices are admissible: no map at level 2
    std::vector<Injection> maps;
    for (Label l = 0; l < 2; ++l)
        for (Vertex v = 0; v < 5; ++v)
            maps.push_back(Injection { { l, v } });
    auto phi = LabelledComplex::explicit_maps(LabelSet::range(2), 5, maps, true);
    auto rep = extendability_certificate(phi, Rational(1, 10), 1);
    EXPECT_EQ(rep.min_density, 0);
    EXPECT_FALSE(rep.meets_threshold);
}

TEST(Extendability, TemplateSmoke)
{
    EXPECT_NO_THROW(extendability_certificate(partite_template(LabelSet::range(2), 2), Rational(1, 2), 1));
}
