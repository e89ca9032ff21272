#include "fdt/program.hpp"

#include <sstream>

#include "fdt/constraints.hpp"
#include "fdt/search.hpp"

namespace fdt {

namespace {

std::string strip(std::string_view line) {
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return "";
    std::size_t e = line.find_last_not_of(" \t\r");
    return std::string(line.substr(b, e - b + 1));
}

bool goal_is(const Term& goal, const char* functor, std::size_t arity) {
    return goal.is(Term::Kind::Compound) && goal.name() == functor &&
           goal.args().size() == arity;
}

/// labeling([leftmost],[X,Y,...]) -> the variable ids, interned in order.
std::vector<VarId> labeling_vars(Kernel& k, const Term& goal) {
    const Term& opts = goal.args()[0];
    if (!opts.is(Term::Kind::List) || opts.args().size() != 1 ||
        !(opts.args()[0] == Term::atom("leftmost")))
        throw ProgramError("labeling options must be [leftmost]: " + goal.str());
    const Term& vars = goal.args()[1];
    if (!vars.is(Term::Kind::List))
        throw ProgramError("labeling expects a variable list: " + goal.str());
    std::vector<VarId> out;
    for (const Term& t : vars.args()) {
        if (t.is(Term::Kind::Wildcard))
            out.push_back(k.registry().var_for_name(t.name()));
        else if (t.is(Term::Kind::Var))
            out.push_back(t.var());
        else
            throw ProgramError("labeling list must contain variables: " +
                               goal.str());
        k.ensure_variable(out.back());
    }
    return out;
}

std::string solution_line(const Kernel& k, const Term& goal,
                          const Solution& sol) {
    // Report the labeled variables under their source names, in list order.
    std::ostringstream os;
    const Term& vars = goal.args()[1];
    bool first = true;
    for (const Term& t : vars.args()) {
        std::string name = t.is(Term::Kind::Wildcard) ? t.name() : t.str();
        VarId v{0};
        if (t.is(Term::Kind::Var)) v = t.var();
        if (t.is(Term::Kind::Wildcard))
            for (const auto& [n, id] : k.registry().named_vars())
                if (n == t.name()) v = id;
        if (!first) os << ", ";
        first = false;
        os << name << " = ";
        auto it = sol.bindings.find(v);
        if (it != sol.bindings.end())
            os << it->second;
        else
            os << k.domain(v).str();
    }
    return os.str();
}

} // namespace

std::vector<Term> parse_program(std::string_view text) {
    std::vector<Term> goals;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view raw = nl == std::string_view::npos
                                   ? text.substr(pos)
                                   : text.substr(pos, nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        std::string line = strip(raw);
        if (line.empty() || line[0] == '%') continue;
        if (line.back() != '.')
            throw ParseError("goal on line " + std::to_string(line_no) +
                                 " must end with '.'",
                             0);
        line.pop_back();
        try {
            goals.push_back(parse_term(line));
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " +
                                 e.what(),
                             e.pos);
        }
    }
    return goals;
}

RunResult run_program(Kernel& k, const std::vector<Term>& goals,
                      std::size_t max_solutions) {
    RunResult result;
    for (const Term& goal : goals) {
        if (goal_is(goal, "labeling", 2)) {
            std::vector<VarId> vars = labeling_vars(k, goal);
            std::vector<Solution> sols =
                labeling(k, LabelingOptions{}, vars, max_solutions);
            if (sols.empty()) {
                result.failed = true;
                return result;
            }
            for (const Solution& s : sols)
                result.solutions.push_back(solution_line(k, goal, s));
            continue;
        }
        bool known = goal_is(goal, "domain", 3) || goal_is(goal, "in", 2) ||
                     goal_is(goal, "all_different", 1) ||
                     goal_is(goal, "all_distinct", 1) ||
                     goal_is(goal, "element", 3);
        if (!known)
            throw ProgramError("unsupported goal: " + goal.str());
        if (k.connect_ctr(goal) == CtrResult::Fail) {
            result.failed = true;
            return result;
        }
    }
    return result;
}

RunResult run_program_text(Kernel& k, std::string_view text,
                           std::size_t max_solutions) {
    install_standard_constraints(k);
    return run_program(k, parse_program(text), max_solutions);
}

} // namespace fdt
