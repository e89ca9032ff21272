#include "fdt/kernel.hpp"

#include <algorithm>
#include <cassert>

namespace fdt {

void Kernel::register_constraint(std::string functor,
                                 std::shared_ptr<const ConstraintOps> ops) {
    ops_[std::move(functor)] = std::move(ops);
}

const ConstraintOps& Kernel::ops_for(const std::string& functor) const {
    auto it = ops_.find(functor);
    if (it == ops_.end())
        throw ProgramError("unsupported constraint: " + functor);
    return *it->second;
}

std::pair<CtrId, Term> Kernel::intern_source(const Term& source) {
    auto [id, rep] = intern_constraint(source, registry_);
    for (VarId v : collect_vars(rep)) ensure_variable(v);
    return {std::move(id), std::move(rep)};
}

VariableCell& Kernel::ensure_variable(VarId v) {
    auto it = variables_.find(v);
    if (it == variables_.end()) {
        VariableCell cell;
        cell.id = v;
        cell.domain = FiniteDomain::range(kDefaultDomainMin, kDefaultDomainMax);
        it = variables_.emplace(v, std::move(cell)).first;
    }
    return it->second;
}

const VariableCell* Kernel::variable(VarId v) const {
    auto it = variables_.find(v);
    return it == variables_.end() ? nullptr : &it->second;
}

VariableCell* Kernel::variable(VarId v) {
    auto it = variables_.find(v);
    return it == variables_.end() ? nullptr : &it->second;
}

const ConstraintCell* Kernel::constraint(const CtrId& id) const {
    auto it = constraints_.find(id);
    return it == constraints_.end() ? nullptr : &it->second;
}

const FiniteDomain& Kernel::domain(VarId v) const {
    const VariableCell* cell = variable(v);
    assert(cell && "unknown variable");
    return cell->domain;
}

DomainFn Kernel::domain_fn() const {
    return [this](VarId v) { return domain(v); };
}

std::vector<VarId> Kernel::all_vars() const {
    std::vector<VarId> out;
    out.reserve(variables_.size());
    for (const auto& [id, cell] : variables_) out.push_back(id);
    return out;
}

// ---------------------------------------------------------------------------
// Services

CtrResult Kernel::connect_ctr(const Term& source) {
    if (failed_)
        throw ProgramError("cannot post a constraint to a failed kernel");
    const ConstraintOps& ops =
        ops_for(source.is(Term::Kind::Compound) ? source.name() : "");
    ops.validate(source);

    auto [cid, rep] = intern_source(source);
    ConstraintCell cell;
    cell.id = cid;
    cell.rep = rep;
    cell.vlist = collect_vars(rep);
    auto [it, inserted] = constraints_.emplace(cid, std::move(cell));
    assert(inserted);
    ctr_order_.push_back(cid);
    ConstraintCell& c = it->second;
    for (VarId v : c.vlist) ensure_variable(v).clist.push_back(cid);

    log_.emit(BeginNewCtr{cid, rep});

    CtrResult result;
    bool ok = ops.post(*this, c);
    if (!ok || failed_) {
        failed_ = true;
        drain_queues();
        result = CtrResult::Fail;
    } else {
        Demon demon;
        demon.id = cid;
        demon.dtype = ops.demon_type(rep);
        demon.wake_conds = ops.wake_conds(rep);
        c.demons.push_back(demon);
        log_.emit(NewDemon{demon.id, demon.dtype, demon.wake_conds, rep});

        run_demon(c);
        if (!failed_) run_to_fixpoint();

        if (failed_)
            result = CtrResult::Fail;
        else if (c.status == CtrStatus::Entailed)
            result = CtrResult::Entail;
        else
            result = CtrResult::Delay;
    }
    log_.emit(EndNewCtr{result});
    return result;
}

void Kernel::disconnect_ctr(const CtrId& id) {
    auto it = constraints_.find(id);
    if (it == constraints_.end()) return;
    ConstraintCell& c = it->second;
    if (c.status == CtrStatus::Entailed) return;
    c.status = CtrStatus::Entailed;
    for (VarId v : c.vlist) {
        VariableCell* var = variable(v);
        if (!var) continue;
        std::erase(var->clist, id);
    }
    for (Demon& d : c.demons) d.queued = false;
    std::erase(ready_queue_, id);
}

void Kernel::enqueue_ctr(const CtrId& id, const PropEvent& e) {
    auto it = constraints_.find(id);
    if (it == constraints_.end()) return;
    ConstraintCell& c = it->second;
    if (c.status == CtrStatus::Entailed) return;
    for (Demon& d : c.demons) {
        if (d.queued) continue;
        for (const auto& [path, cond] : d.wake_conds) {
            bool fired = false;
            switch (cond) {
            case WakeCond::Dom: fired = e.change.dom; break;
            case WakeCond::Min: fired = e.change.min; break;
            case WakeCond::Max: fired = e.change.max; break;
            case WakeCond::MinMax: fired = e.change.min || e.change.max; break;
            case WakeCond::Val: fired = e.change.ground; break;
            }
            if (!fired) continue;
            std::vector<std::vector<PathStep>> hits;
            for (const PathTarget& t : resolve(path, c.rep))
                if (t.term.is(Term::Kind::Var) && t.term.var() == e.var)
                    hits.push_back(t.steps);
            if (hits.empty()) continue;
            log_.emit(
                PushDemonBecause{path_for_steps(hits), cond, c.rep});
            log_.emit(PushDemon{d.id, d.dtype});
            d.queued = true;
            ready_queue_.push_back(d.id);
            break;
        }
    }
}

void Kernel::dispatch_ctr() {
    assert(!ready_queue_.empty() && "dispatch_ctr on an empty ready queue");
    assert(propagation_queue_.empty() &&
           "dispatch_ctr while notifications are pending");
    DemonId id = ready_queue_.front();
    ready_queue_.pop_front();
    auto it = constraints_.find(id);
    if (it == constraints_.end() || it->second.status == CtrStatus::Entailed)
        return;
    for (Demon& d : it->second.demons)
        if (d.id == id) d.queued = false;
    run_demon(it->second);
}

CtrResult Kernel::run_demon(ConstraintCell& cell) {
    // Notifications always have priority; a demon never wakes over a
    // pending one.
    assert(propagation_queue_.empty());
    const ConstraintOps& ops = ops_for(cell.rep.name());
    assert(!cell.demons.empty());
    const Demon& demon = cell.demons.front();
    log_.emit(BeginWakeDemon{demon.id, demon.dtype});
    CtrResult r = ops.filter(*this, cell);
    if (failed_) r = CtrResult::Fail;
    if (r == CtrResult::Entail) disconnect_ctr(cell.id);
    log_.emit(EndWakeDemon{r});
    if (r == CtrResult::Fail) {
        failed_ = true;
        drain_queues();
    }
    return r;
}

PruneResult Kernel::enqueue_event(const CtrId& ctr, const Term& rep,
                                  const std::vector<PruneTarget>& changed,
                                  const IntSet& remove, const PruneFact& actual) {
    assert(!changed.empty());
    std::vector<std::vector<PathStep>> chains;
    chains.reserve(changed.size());
    for (const PruneTarget& t : changed) chains.push_back(t.steps);
    Path path = path_for_steps(chains);

    std::vector<FiniteDomain> before;
    before.reserve(changed.size());
    for (const PruneTarget& t : changed) before.push_back(domain(t.var));
    log_.emit(BeforePrune{path, before, rep});

    PruneResult result = PruneResult::Succeed;
    std::vector<FiniteDomain> after;
    after.reserve(changed.size());
    for (std::size_t i = 0; i < changed.size(); ++i) {
        FiniteDomain next = before[i].remove_set(remove).first;
        if (next.empty()) result = PruneResult::Fail;
        after.push_back(std::move(next));
    }
    log_.emit(PruneEv{ctr, path, actual, rep, result});

    std::vector<PropEvent> notifications;
    for (std::size_t i = 0; i < changed.size(); ++i) {
        VariableCell* var = variable(changed[i].var);
        assert(var);
        DomainChange ch;
        ch.dom = true;
        if (!after[i].empty()) {
            ch.min = before[i].min() != after[i].min();
            ch.max = before[i].max() != after[i].max();
            ch.ground = !before[i].is_ground() && after[i].is_ground();
        }
        var->domain = after[i];
        notifications.push_back(PropEvent{changed[i].var, after[i], ctr, ch});
    }
    log_.emit(AfterPrune{path, after, rep});

    if (result == PruneResult::Succeed)
        for (PropEvent& e : notifications)
            propagation_queue_.push_back(std::move(e));
    return result;
}

void Kernel::dispatch_event() {
    assert(!propagation_queue_.empty());
    PropEvent e = propagation_queue_.front();
    propagation_queue_.pop_front();
    VariableCell* var = variable(e.var);
    if (!var) return;
    std::vector<CtrId> clist = var->clist;
    for (const CtrId& c : clist) enqueue_ctr(c, e);
}

void Kernel::run_to_fixpoint() {
    while (!failed_) {
        if (!propagation_queue_.empty())
            dispatch_event();
        else if (!ready_queue_.empty())
            dispatch_ctr();
        else
            break;
    }
    if (failed_) drain_queues();
}

void Kernel::drain_queues() {
    propagation_queue_.clear();
    for (DemonId id : ready_queue_) {
        auto it = constraints_.find(id);
        if (it == constraints_.end()) continue;
        for (Demon& d : it->second.demons)
            if (d.id == id) d.queued = false;
    }
    ready_queue_.clear();
}

// ---------------------------------------------------------------------------
// Emission helpers

void Kernel::begin_method(const std::string& name) {
    log_.emit(BeginMethod{name});
}

void Kernel::end_method(PruneResult result) { log_.emit(EndMethod{result}); }

void Kernel::info_method(const std::string& info_name, const Path& p,
                         const Term& entity, const Term& rep) {
    log_.emit(InfoMethod{info_name, p, entity, rep});
}

void Kernel::emit_fail(const Term& rep) { log_.emit(FailEv{rep}); }

void Kernel::emit_fail_because(const CtrId& ctr, const Explanation& why,
                               const Term& rep) {
    log_.emit(FailBecause{ctr, why, rep});
}

void Kernel::emit_new_ctr_because(const CtrId& ctr, const Explanation& why,
                                  const Term& rep) {
    log_.emit(NewCtrBecause{ctr, why, rep});
}

bool Kernel::would_change(const std::vector<PruneTarget>& targets,
                          const IntSet& remove) const {
    for (const PruneTarget& t : targets)
        if (!domain(t.var).disjoint_with(remove)) return true;
    return false;
}

PruneOutcome Kernel::apply_prune(const CtrId& ctr, const Term& rep,
                                 const std::vector<PruneTarget>& targets,
                                 const IntSet& remove, const PruneFact& intention,
                                 const std::optional<Explanation>& why) {
    std::vector<PruneTarget> changed;
    IntSet removed_union;
    for (const PruneTarget& t : targets) {
        IntSet cut = domain(t.var).intersect(remove).first;
        if (cut.empty()) continue;
        changed.push_back(t);
        removed_union = removed_union.unite(cut);
    }
    if (changed.empty()) return PruneOutcome::Noop;

    log_.emit(BeginPrune{intention, rep});
    if (why) log_.emit(PruneBecause{ctr, *why, rep});
    PruneResult r = enqueue_event(ctr, rep, changed, remove,
                                  PruneFact::normalized(removed_union));
    log_.emit(EndPrune{r});
    if (r == PruneResult::Fail) {
        failed_ = true;
        drain_queues();
        return PruneOutcome::Failed;
    }
    return PruneOutcome::Changed;
}

// ---------------------------------------------------------------------------
// Snapshots

Kernel::Snapshot Kernel::snapshot() const {
    Snapshot s;
    s.variables = variables_;
    for (const auto& [id, cell] : constraints_) {
        s.statuses[id] = cell.status;
        for (const Demon& d : cell.demons) s.demon_queued[d.id] = d.queued;
    }
    s.ready_queue = ready_queue_;
    s.propagation_queue = propagation_queue_;
    s.failed = failed_;
    return s;
}

void Kernel::restore(const Snapshot& s) {
    for (const auto& [id, cell] : s.variables) variables_[id] = cell;
    for (auto& [id, cell] : constraints_) {
        auto st = s.statuses.find(id);
        // Constraints born after the snapshot stay out of play.
        cell.status = st == s.statuses.end() ? CtrStatus::Entailed : st->second;
        for (Demon& d : cell.demons) {
            auto q = s.demon_queued.find(d.id);
            d.queued = q == s.demon_queued.end() ? false : q->second;
        }
    }
    ready_queue_ = s.ready_queue;
    propagation_queue_ = s.propagation_queue;
    failed_ = s.failed;
}

} // namespace fdt
