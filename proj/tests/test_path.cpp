#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "fdt/path.hpp"

using namespace fdt;

namespace {

Term alldiff_rep() {
    return parse_term("all_different([fdvar_1,fdvar_2,3,fdvar_3,8,fdvar_4])");
}

Term element_rep() { return parse_term("element(fdvar_1,[2,4,3,8],fdvar_2)"); }

/// Variable state just before the element constraint is posted:
/// every variable ranges over 1..6 with 3 removed.
DomainFn narrowed_state() {
    auto d = FiniteDomain::from_intervals({{1, 2}, {4, 6}});
    return [d](VarId) { return d; };
}

std::vector<Term> resolved_terms(const std::string& path, const Term& ctx) {
    std::vector<Term> out;
    for (const PathTarget& t : resolve(parse_path(path), ctx))
        out.push_back(t.term);
    return out;
}

} // namespace

TEST_CASE("single-element paths address constraint arguments") {
    // [[1,3]] -> X and Y of the element constraint
    auto ab = resolved_terms("[[1,3]]", element_rep());
    REQUIRE(ab.size() == 2);
    CHECK(ab[0] == Term::variable(VarId{1}));
    CHECK(ab[1] == Term::variable(VarId{2}));

    // [2] -> the whole list
    auto whole = resolved_terms("[2]", element_rep());
    REQUIRE(whole.size() == 1);
    CHECK(whole[0] == parse_term("[2,4,3,8]"));
}

TEST_CASE("hash elements address list positions") {
    // [2,#[1,2]] -> the first two list elements
    auto two = resolved_terms("[2,#[1,2]]", element_rep());
    REQUIRE(two.size() == 2);
    CHECK(two[0] == Term::integer(2));
    CHECK(two[1] == Term::integer(4));
}

TEST_CASE("subtraction removes positions, preserving order") {
    // [2,#[*]]\[2,#1] -> list elements 4, 3, 8
    auto rest = resolved_terms("[2,#[*]]\\[2,#1]", element_rep());
    REQUIRE(rest.size() == 3);
    CHECK(rest[0] == Term::integer(4));
    CHECK(rest[1] == Term::integer(3));
    CHECK(rest[2] == Term::integer(8));
}

TEST_CASE("path functions") {
    DomainFn state = narrowed_state();
    // [1]/length on the all_different representation -> 6
    auto len = apply_function(parse_path("[1]/length"), alldiff_rep(), state);
    CHECK(len == std::vector<std::int64_t>{6});
    // [1]/min on the element representation -> 1
    auto mn = apply_function(parse_path("[1]/min"), element_rep(), state);
    CHECK(mn == std::vector<std::int64_t>{1});
    // [[1,3]]/max -> [6,6]
    auto mx = apply_function(parse_path("[[1,3]]/max"), element_rep(), state);
    CHECK(mx == std::vector<std::int64_t>{6, 6});
    // min/max of an integer entity return the integer itself
    auto lit = apply_function(parse_path("[2,#3]/min"), element_rep(), state);
    CHECK(lit == std::vector<std::int64_t>{3});
    auto litmax = apply_function(parse_path("[2,#3]/max"), element_rep(), state);
    CHECK(litmax == std::vector<std::int64_t>{3});
}

TEST_CASE("resolution errors") {
    CHECK_THROWS_AS(resolve(parse_path("[4]"), element_rep()), PathError);
    CHECK_THROWS_AS(resolve(parse_path("[#1]"), element_rep()), PathError);
    CHECK_THROWS_AS(resolve(parse_path("[1,#1]"), element_rep()), PathError);
    CHECK_THROWS_AS(resolve(parse_path("[2,#9]"), element_rep()), PathError);
    DomainFn state = narrowed_state();
    CHECK_THROWS_AS(apply_function(parse_path("[1]/length"), element_rep(), state),
                    PathError);
    CHECK_THROWS_AS(apply_function(parse_path("[2]/min"), element_rep(), state),
                    PathError);
}

TEST_CASE("path round trips") {
    for (const char* text :
         {"[1,#[*]]", "[2,#[*]]\\[2,#1]", "[2]/length", "[1,#[1,2,4,6]]",
          "[1,#3]", "[[1,3]]/max", "[1]", "[2,#[1,2]]",
          "[1,#[*]]\\[1,#2]/min"}) {
        CAPTURE(text);
        Path p = parse_path(text);
        CHECK(p.str() == text);
        CHECK(parse_path(p.str()) == p);
    }
    CHECK_THROWS_AS(parse_path("[0]"), PathError);
    CHECK_THROWS_AS(parse_path("[]"), PathError);
    CHECK_THROWS_AS(parse_path("[1]/sum"), PathError);
    CHECK_THROWS_AS(parse_path("[2,#[2,1]]"), PathError);
    // functions are confined to the final position
    CHECK_THROWS_AS(parse_path("[1]/min/max"), PathError);
    CHECK_THROWS_AS(parse_path("[1]\\[2]/min\\[3]"), PathError);
}

TEST_CASE("subtraction equals set difference of resolutions") {
    Term ctx = element_rep();
    Path full = parse_path("[2,#[*]]");
    for (const char* minus : {"[2,#1]", "[2,#[1,3]]", "[2,#[1,2,3,4]]"}) {
        Path sub = parse_path(std::string("[2,#[*]]\\") + minus);
        auto main_targets = resolve(full, ctx);
        auto removed = resolve(parse_path(minus), ctx);
        std::vector<PathTarget> expect;
        for (const PathTarget& t : main_targets) {
            bool hit = false;
            for (const PathTarget& r : removed)
                if (r.steps == t.steps) hit = true;
            if (!hit) expect.push_back(t);
        }
        auto got = resolve(sub, ctx);
        REQUIRE(got.size() == expect.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].steps == expect[i].steps);
            CHECK(got[i].term == expect[i].term);
        }
    }
}

TEST_CASE("[k,#[*]] enumerates every list element in order") {
    auto all = resolved_terms("[2,#[*]]", element_rep());
    REQUIRE(all.size() == 4);
    CHECK(all[0] == Term::integer(2));
    CHECK(all[1] == Term::integer(4));
    CHECK(all[2] == Term::integer(3));
    CHECK(all[3] == Term::integer(8));
}

TEST_CASE("canonical paths rebuilt from positions resolve to the same spots") {
    Term ctx = alldiff_rep();
    std::mt19937 rng(5);
    for (int round = 0; round < 200; ++round) {
        std::vector<int> positions;
        for (int i = 1; i <= 6; ++i)
            if (rng() % 2) positions.push_back(i);
        if (positions.empty()) continue;
        Path p = path_for_list_positions(1, positions);
        auto targets = resolve(p, ctx);
        REQUIRE(targets.size() == positions.size());
        std::vector<std::vector<PathStep>> chains;
        for (const PathTarget& t : targets) chains.push_back(t.steps);
        Path rebuilt = path_for_steps(chains);
        CHECK(rebuilt == p);
        auto again = resolve(rebuilt, ctx);
        REQUIRE(again.size() == targets.size());
        for (std::size_t i = 0; i < again.size(); ++i)
            CHECK(again[i].steps == targets[i].steps);
    }
}

TEST_CASE("path builders") {
    CHECK(path_for_arg(3).str() == "[3]");
    CHECK(path_for_args({1, 3}).str() == "[[1,3]]");
    CHECK(path_for_list_positions(1, {3}).str() == "[1,#3]");
    CHECK(path_for_list_positions(1, {1, 2, 4, 6}).str() == "[1,#[1,2,4,6]]");
}
