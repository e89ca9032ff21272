#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "fdt/explanation.hpp"

using namespace fdt;

namespace {

Term alldiff_rep() {
    return parse_term("all_different([fdvar_1,fdvar_2,3,fdvar_3,8,fdvar_4])");
}

Term element_rep() { return parse_term("element(fdvar_1,[2,4,3,8],fdvar_2)"); }

DomainFn state(std::map<int, FiniteDomain> doms) {
    return [doms = std::move(doms)](VarId v) {
        auto it = doms.find(v.n);
        REQUIRE(it != doms.end());
        return it->second;
    };
}

} // namespace

TEST_CASE("entity_satisfies") {
    DomainFn s = state({{2, FiniteDomain::from_intervals({{2, 2}, {4, 4}})}});
    // a literal can take exactly its own value
    CHECK(entity_satisfies(Term::integer(3), Property::eq(3), s));
    CHECK_FALSE(entity_satisfies(Term::integer(3), Property::eq(7), s));
    // fdvar_2 with domain {2,4} does not intersect {8}
    CHECK(entity_satisfies(Term::variable(VarId{2}),
                           Property::notinset(IntSet::singleton(8)), s));
    CHECK_FALSE(entity_satisfies(Term::variable(VarId{2}),
                                 Property::notinset(IntSet::singleton(4)), s));
    // inset is containment of the whole value set
    CHECK(entity_satisfies(Term::variable(VarId{2}),
                           Property::inset(IntSet::range(1, 4)), s));
    CHECK_FALSE(entity_satisfies(Term::variable(VarId{2}),
                                 Property::inset(IntSet::range(1, 3)), s));
    // neq: some value distinct from the given one exists
    CHECK(entity_satisfies(Term::variable(VarId{2}), Property::neq(2), s));
    CHECK(entity_satisfies(Term::integer(3), Property::neq(7), s));
    CHECK_FALSE(entity_satisfies(Term::integer(3), Property::neq(3), s));
    // atoms and compounds are contract violations
    CHECK_THROWS_AS(entity_satisfies(Term::atom("foo"), Property::eq(1), s),
                    EvalError);
}

TEST_CASE("holds on the ground-literal explanation") {
    DomainFn s = state({{1, FiniteDomain::range(1, 6)},
                        {2, FiniteDomain::range(1, 6)},
                        {3, FiniteDomain::range(1, 6)},
                        {4, FiniteDomain::range(1, 6)}});
    Explanation e = parse_explanation("1-[cond(1,[1,#3],eq(3))]");
    CHECK(holds(e, alldiff_rep(), s));
    // threshold above the cond count cannot hold
    Explanation e2 = e;
    e2.n = 2;
    CHECK_FALSE(holds(e2, alldiff_rep(), s));
}

TEST_CASE("holds on the Hall-set explanation") {
    DomainFn s = state({{1, FiniteDomain::range(1, 6)},
                        {2, FiniteDomain::range(1, 2)},
                        {3, FiniteDomain::range(1, 2)},
                        {4, FiniteDomain::range(1, 2)},
                        {5, FiniteDomain::range(1, 2)}});
    Term rep =
        parse_term("all_distinct([fdvar_1,fdvar_2,fdvar_3,fdvar_4,fdvar_5])");
    Explanation e =
        parse_explanation("1-[cond(all,[1,#[2,3,4,5]],inset([[1|2]]))]");
    CHECK(holds(e, rep, s));
    // with one domain enlarged the cond(all,...) no longer holds
    DomainFn widened = state({{1, FiniteDomain::range(1, 6)},
                              {2, FiniteDomain::range(1, 2)},
                              {3, FiniteDomain::range(1, 3)},
                              {4, FiniteDomain::range(1, 2)},
                              {5, FiniteDomain::range(1, 2)}});
    CHECK_FALSE(holds(e, rep, widened));
}

TEST_CASE("function paths test the function value") {
    DomainFn s = state({});
    Explanation e = parse_explanation("1-[cond(1,[2]/length,eq(4))]");
    CHECK(holds(e, element_rep(), s));
    Explanation e5 = parse_explanation("1-[cond(1,[2]/length,eq(5))]");
    CHECK_FALSE(holds(e5, element_rep(), s));
}

TEST_CASE("property lists pair up with entities") {
    DomainFn s = state({{1, FiniteDomain::range(1, 2)},
                        {2, FiniteDomain::range(4, 6)}});
    Explanation e =
        parse_explanation("1-[cond(2,[[1,3]],[eq(2),neq(3)])]");
    CHECK(holds(e, element_rep(), s));
    // wrong list length is an evaluation error
    Explanation bad = parse_explanation("1-[cond(1,[[1,3]],[eq(2)])]");
    CHECK_THROWS_AS(holds(bad, element_rep(), s), EvalError);
}

TEST_CASE("monotonicity in the threshold and the all keyword") {
    std::mt19937 rng(11);
    Term rep = alldiff_rep();
    for (int round = 0; round < 200; ++round) {
        std::map<int, FiniteDomain> doms;
        for (int v = 1; v <= 4; ++v) {
            int lo = static_cast<int>(rng() % 5) + 1;
            int hi = lo + static_cast<int>(rng() % 4);
            doms[v] = FiniteDomain::range(lo, hi);
        }
        DomainFn s = state(doms);

        std::vector<Cond> conds;
        for (int c = 0; c < 3; ++c) {
            Cond cond;
            cond.min_count = 1;
            cond.path = path_for_list_positions(
                1, {static_cast<int>(rng() % 6) + 1});
            cond.props = {Property::eq(static_cast<int>(rng() % 8))};
            cond.single_prop = true;
            conds.push_back(std::move(cond));
        }
        int held = 0;
        for (const Cond& c : conds)
            if (cond_holds(c, rep, s)) ++held;
        for (int n = 1; n <= 3; ++n) {
            Explanation e;
            e.n = n;
            e.conds = conds;
            CHECK(holds(e, rep, s) == (held >= n));
        }

        // cond with m=all over k entities behaves like m=k
        Cond all_cond;
        all_cond.min_count = std::nullopt;
        all_cond.path = parse_path("[1,#[1,2,4,6]]");
        all_cond.props = {Property::eq(static_cast<int>(rng() % 8))};
        all_cond.single_prop = true;
        Cond k_cond = all_cond;
        k_cond.min_count = 4;
        CHECK(cond_holds(all_cond, rep, s) == cond_holds(k_cond, rep, s));
    }
}

TEST_CASE("path resolution failures propagate out of holds") {
    DomainFn s = state({});
    Explanation e = parse_explanation("1-[cond(1,[9],eq(1))]");
    CHECK_THROWS_AS(holds(e, element_rep(), s), PathError);
}

TEST_CASE("explanation text round trips") {
    for (const char* text :
         {"1-[cond(1,[2]/length,eq(4))]",
          "1-[cond(all,[1,#[2,3,4,5]],inset([[1|2]]))]",
          "1-[cond(1,[1,#3],eq(3))]",
          "1-[cond(1,[3],notinset([[8|8]]))]",
          "2-[cond(1,[1],eq(2)),cond(all,[[1,3]],[neq(1),inset([[2|4],[6|6]])])]"}) {
        CAPTURE(text);
        Explanation e = parse_explanation(text);
        CHECK(e.str() == text);
        CHECK(parse_explanation(e.str()) == e);
    }
    CHECK_THROWS_AS(parse_explanation("0-[cond(1,[1],eq(1))]"), ParseError);
    CHECK_THROWS_AS(parse_explanation("1-[cond(x,[1],eq(1))]"), ParseError);
    CHECK_THROWS_AS(parse_explanation("1-[cond(1,[1],gt(1))]"), ParseError);
}
