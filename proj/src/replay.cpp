#include "fdt/replay.hpp"

#include <map>

#include "fdt/kernel.hpp"

namespace fdt {

namespace {

bool is_labeling_rep(const Term& rep) {
    return rep.is(Term::Kind::Compound) && rep.name() == "labeling";
}

class Replayer {
public:
    explicit Replayer(const std::vector<TraceEvent>& log) : log_(log) {}

    std::vector<Violation> run() {
        for (std::size_t i = 0; i < log_.size(); ++i) step(i);
        return std::move(violations_);
    }

private:
    struct DecisionFrame {
        VarId var;
        CtrId ctr;
        std::map<VarId, FiniteDomain> saved;
    };

    FiniteDomain dom(VarId v) const {
        auto it = domains_.find(v);
        if (it != domains_.end()) return it->second;
        return FiniteDomain::range(kDefaultDomainMin, kDefaultDomainMax);
    }

    DomainFn domain_fn() const {
        return [this](VarId v) { return dom(v); };
    }

    void violation(EventId id, std::string msg) {
        violations_.push_back({id, std::move(msg)});
    }

    std::vector<VarId> path_vars(EventId id, const Path& p, const Term& rep) {
        std::vector<VarId> out;
        try {
            for (const PathTarget& t : resolve(p, rep)) {
                if (!t.term.is(Term::Kind::Var)) {
                    violation(id, "pruned path addresses a non-variable: " +
                                      t.term.str());
                    return {};
                }
                out.push_back(t.term.var());
            }
        } catch (const Error& e) {
            violation(id, std::string("path does not resolve: ") + e.what());
        }
        return out;
    }

    void unwind_all() {
        if (stack_.empty()) return;
        domains_ = stack_.front().saved;
        stack_.clear();
    }

    void handle_decision(VarId var, const CtrId& ctr) {
        if (!stack_.empty() && !(stack_.back().ctr == ctr)) unwind_all();
        for (std::size_t i = stack_.size(); i-- > 0;) {
            if (stack_[i].var == var) {
                domains_ = stack_[i].saved;
                stack_.resize(i + 1);
                return;
            }
        }
        stack_.push_back({var, ctr, domains_});
    }

    // The decision variable and constraint of a labeling prune block that
    // opens at `i`.
    void handle_labeling_block(std::size_t i) {
        for (std::size_t j = i + 1; j < log_.size(); ++j) {
            if (const auto* p = std::get_if<PruneEv>(&log_[j].data)) {
                std::vector<VarId> vars =
                    path_vars(log_[j].id, p->pruned_vars, p->rep);
                if (vars.size() == 1) handle_decision(vars[0], p->ctr);
                return;
            }
            if (std::get_if<EndPrune>(&log_[j].data)) return;
        }
    }

    void check_explanation(EventId id, const CtrId&, const Explanation& expl,
                           const Term& rep) {
        try {
            if (!holds(expl, rep, domain_fn()))
                violation(id, "explanation does not hold at its emission state: " +
                                  expl.str());
        } catch (const Error& e) {
            violation(id, std::string("explanation cannot be evaluated: ") +
                              e.what());
        }
    }

    void step(std::size_t i) {
        const TraceEvent& e = log_[i];
        if (const auto* b = std::get_if<BeginNewCtr>(&e.data)) {
            (void)b;
            if (depth_ == 0) unwind_all(); // a fresh posting ends any search
            ++depth_;
        } else if (std::get_if<BeginWakeDemon>(&e.data) ||
                   std::get_if<BeginMethod>(&e.data)) {
            ++depth_;
        } else if (const auto* bp = std::get_if<BeginPrune>(&e.data)) {
            if (is_labeling_rep(bp->rep)) handle_labeling_block(i);
            ++depth_;
        } else if (std::get_if<EndNewCtr>(&e.data) ||
                   std::get_if<EndWakeDemon>(&e.data) ||
                   std::get_if<EndMethod>(&e.data) ||
                   std::get_if<EndPrune>(&e.data)) {
            if (depth_ > 0) --depth_;
        } else if (const auto* before = std::get_if<BeforePrune>(&e.data)) {
            std::vector<VarId> vars =
                path_vars(e.id, before->pruned_vars, before->rep);
            if (vars.size() != before->domains.size()) {
                violation(e.id, "before_prune domain count disagrees with path");
                return;
            }
            for (std::size_t k = 0; k < vars.size(); ++k) {
                if (!(dom(vars[k]) == before->domains[k]))
                    violation(e.id, "before_prune domain of " + vars[k].str() +
                                        " disagrees with the replayed state");
                domains_[vars[k]] = before->domains[k];
            }
        } else if (const auto* after = std::get_if<AfterPrune>(&e.data)) {
            std::vector<VarId> vars =
                path_vars(e.id, after->pruned_vars, after->rep);
            if (vars.size() != after->domains.size()) {
                violation(e.id, "after_prune domain count disagrees with path");
                return;
            }
            for (std::size_t k = 0; k < vars.size(); ++k)
                domains_[vars[k]] = after->domains[k];
        } else if (const auto* pb = std::get_if<PruneBecause>(&e.data)) {
            check_explanation(e.id, pb->ctr, pb->expl, pb->rep);
        } else if (const auto* fb = std::get_if<FailBecause>(&e.data)) {
            check_explanation(e.id, fb->ctr, fb->expl, fb->rep);
        } else if (const auto* nb = std::get_if<NewCtrBecause>(&e.data)) {
            check_explanation(e.id, nb->ctr, nb->expl, nb->rep);
        } else if (const auto* pd = std::get_if<PushDemonBecause>(&e.data)) {
            if (pd->cond == WakeCond::Val) {
                for (VarId v : path_vars(e.id, pd->vars, pd->rep))
                    if (!dom(v).is_ground())
                        violation(e.id, "push_demon_because val names " +
                                            v.str() + " which is not ground");
            }
        }
    }

    const std::vector<TraceEvent>& log_;
    std::vector<Violation> violations_;
    std::map<VarId, FiniteDomain> domains_;
    std::vector<DecisionFrame> stack_;
    int depth_ = 0;
};

} // namespace

std::vector<Violation> check_log(const std::vector<TraceEvent>& log) {
    std::vector<Violation> out = validate_nesting(log);
    Replayer replayer(log);
    for (Violation& v : replayer.run()) out.push_back(std::move(v));
    return out;
}

} // namespace fdt
