#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "fdt/program.hpp"
#include "fdt/replay.hpp"

using namespace fdt;

namespace {

const char* kSearchProgram =
    "domain([X,Y,V1,V2],1,6).\n"
    "all_different([X,Y,3,V1,8,V2]).\n"
    "element(X,[2,4,3,8],Y).\n"
    "labeling([leftmost],[X,Y,V1,V2]).\n";

const char* kFailingProgram =
    "domain([X1],1,6).\n"
    "domain([X2,X3,X4,X5],1,2).\n"
    "all_distinct([X1,X2,X3,X4,X5]).\n";

std::string serialize_log(const Kernel& k) {
    std::ostringstream os;
    write_log(os, k.log().events());
    return os.str();
}

/// A random well-formed program over up to five variables. Most runs
/// propagate and search; some fail.
std::string random_program(std::mt19937& rng) {
    std::uniform_int_distribution<int> vcount(2, 5);
    int n = vcount(rng);
    std::ostringstream os;
    os << "domain([";
    for (int i = 0; i < n; ++i) os << (i ? "," : "") << "V" << i;
    os << "]," << rng() % 3 << "," << 2 + static_cast<int>(rng() % 5) << ").\n";
    if (rng() % 2) {
        os << "all_different([";
        for (int i = 0; i < n; ++i) os << (i ? "," : "") << "V" << i;
        if (rng() % 2) os << "," << rng() % 6;
        os << "]).\n";
    } else {
        os << "all_distinct([";
        for (int i = 0; i < n; ++i) os << (i ? "," : "") << "V" << i;
        os << "]).\n";
    }
    if (n >= 2 && rng() % 2) {
        int len = 1 + static_cast<int>(rng() % 4);
        os << "element(V0,[";
        for (int i = 0; i < len; ++i) os << (i ? "," : "") << rng() % 7;
        os << "],V1).\n";
    }
    if (rng() % 3) os << "V" << rng() % n << " in 1.." << 1 + rng() % 5 << ".\n";
    os << "labeling([leftmost],[";
    for (int i = 0; i < n; ++i) os << (i ? "," : "") << "V" << i;
    os << "]).\n";
    return os.str();
}

} // namespace

TEST_CASE("program parsing") {
    std::vector<Term> goals = parse_program(kSearchProgram);
    REQUIRE(goals.size() == 4);
    CHECK(goals[0].str() == "domain([X,Y,V1,V2],1,6)");
    CHECK(goals[3].str() == "labeling([leftmost],[X,Y,V1,V2])");

    CHECK(parse_program("").empty());
    CHECK(parse_program("% comment only\n\n").empty());
    CHECK(parse_program("X in 1..4.\n")[0].str() == "X in 1..4");

    CHECK_THROWS_AS(parse_program("domain([X],1,6)\n"), ParseError);
    CHECK_THROWS_AS(parse_program("domain([X,,Y],1,6).\n"), ParseError);
}

TEST_CASE("running the search program") {
    Kernel k;
    RunResult r = run_program_text(k, kSearchProgram);
    CHECK_FALSE(r.failed);
    REQUIRE(r.solutions.size() == 1);
    CHECK(r.solutions[0] == "X = 1, Y = 2, V1 = 4, V2 = 5");
    CHECK(validate_nesting(k.log().events()).empty());
    CHECK(check_log(k.log().events()).empty());
}

TEST_CASE("running the failing program") {
    Kernel k;
    RunResult r = run_program_text(k, kFailingProgram);
    CHECK(r.failed);
    CHECK(r.solutions.empty());
    auto fails = k.log().get_events(parse_selector("fail_because"));
    REQUIRE(fails.size() == 1);
    CHECK(check_log(k.log().events()).empty());
}

TEST_CASE("empty program leaves an empty log") {
    Kernel k;
    RunResult r = run_program_text(k, "");
    CHECK_FALSE(r.failed);
    CHECK(k.log().events().empty());
}

TEST_CASE("several solutions when asked") {
    Kernel k;
    RunResult r = run_program_text(k,
                                   "domain([A,B],1,3).\n"
                                   "all_different([A,B]).\n"
                                   "labeling([leftmost],[A,B]).\n",
                                   4);
    REQUIRE(r.solutions.size() == 4);
    CHECK(r.solutions[0] == "A = 1, B = 2");
    CHECK(r.solutions[1] == "A = 1, B = 3");
    CHECK(r.solutions[2] == "A = 2, B = 1");
    CHECK(r.solutions[3] == "A = 2, B = 3");
}

TEST_CASE("labeling with no solution reports failure") {
    Kernel k;
    RunResult r = run_program_text(k,
                                   "domain([A,B],1,1).\n"
                                   "all_different([A,B]).\n"
                                   "labeling([leftmost],[A,B]).\n");
    CHECK(r.failed);
}

TEST_CASE("a failed posting stops execution before labeling") {
    Kernel k;
    RunResult r = run_program_text(k,
                                   "domain([A,B,C],1,2).\n"
                                   "all_distinct([A,B,C]).\n"
                                   "labeling([leftmost],[A,B,C]).\n");
    CHECK(r.failed);
    CHECK(r.solutions.empty());
    // the search never started: no labeling constraint was interned
    CHECK(k.log()
              .get_events(parse_selector("prune(_,ctr_labeling_1,_,_,_,_)"))
              .empty());
}

TEST_CASE("unsupported goals are rejected") {
    Kernel k;
    CHECK_THROWS_AS(run_program_text(k, "maximize(X).\n"), ProgramError);
    Kernel k2;
    CHECK_THROWS_AS(run_program_text(k2, "labeling([ff],[X]).\n"),
                    ProgramError);
}

TEST_CASE("identical runs produce byte-identical logs") {
    Kernel a;
    Kernel b;
    run_program_text(a, kSearchProgram);
    run_program_text(b, kSearchProgram);
    CHECK(serialize_log(a) == serialize_log(b));
}

TEST_CASE("query by id returns the exact serialized line") {
    Kernel k;
    run_program_text(k, kSearchProgram);
    std::string text = serialize_log(k);
    std::istringstream is(text);
    std::vector<TraceEvent> log = parse_log(is);
    std::vector<TraceEvent> hits = get_events(log, parse_selector("17"));
    REQUIRE(hits.size() == 1);
    std::istringstream lines(text);
    std::string line;
    for (int i = 0; i < 17; ++i) std::getline(lines, line);
    CHECK(serialize_event(hits[0]) == line);
}

TEST_CASE("check_log flags corrupted traces") {
    Kernel k;
    run_program_text(k, kSearchProgram);
    std::vector<TraceEvent> log = k.log().events();
    REQUIRE(check_log(log).empty());

    // swap one end event with its neighbour
    std::vector<TraceEvent> crossed = log;
    for (std::size_t i = 0; i + 1 < crossed.size(); ++i) {
        if (event_name(crossed[i]) == "end_method" &&
            event_name(crossed[i + 1]) == "end_wake_demon") {
            std::swap(crossed[i].data, crossed[i + 1].data);
            break;
        }
    }
    CHECK_FALSE(check_log(crossed).empty());

    // tamper with an explanation so it no longer holds
    std::vector<TraceEvent> unsound = log;
    bool mutated = false;
    for (TraceEvent& e : unsound) {
        if (auto* pb = std::get_if<PruneBecause>(&e.data)) {
            pb->expl = parse_explanation("1-[cond(1,[1,#5],eq(3))]");
            mutated = true;
            break;
        }
    }
    REQUIRE(mutated);
    bool found_soundness = false;
    for (const Violation& v : check_log(unsound))
        if (v.message.find("does not hold") != std::string::npos)
            found_soundness = true;
    CHECK(found_soundness);

    // tamper with an after_prune domain
    std::vector<TraceEvent> wrong = log;
    for (TraceEvent& e : wrong) {
        if (auto* ap = std::get_if<AfterPrune>(&e.data)) {
            ap->domains[0] = FiniteDomain::range(40, 41);
            break;
        }
    }
    CHECK_FALSE(check_log(wrong).empty());
}

TEST_CASE("random programs replay cleanly") {
    std::mt19937 rng(4242);
    for (int round = 0; round < 120; ++round) {
        std::string text = random_program(rng);
        CAPTURE(text);
        Kernel k;
        RunResult r = run_program_text(k, text, 1 + rng() % 3);
        (void)r;
        CHECK(validate_nesting(k.log().events()).empty());
        CHECK(check_log(k.log().events()).empty());

        Kernel again;
        run_program_text(again, text, 1);
    }
}
