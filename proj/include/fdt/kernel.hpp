#ifndef FDT_KERNEL_HPP
#define FDT_KERNEL_HPP

#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fdt/domain.hpp"
#include "fdt/explanation.hpp"
#include "fdt/path.hpp"
#include "fdt/term.hpp"
#include "fdt/trace.hpp"

namespace fdt {

/// Fresh variables start with the full machine-integer range; constraints
/// narrow it from there.
inline constexpr std::int64_t kDefaultDomainMin = -2147483648LL;
inline constexpr std::int64_t kDefaultDomainMax = 2147483647LL;

struct VariableCell {
    VarId id;
    FiniteDomain domain;
    std::vector<CtrId> clist; // connected constraints mentioning this variable
};

struct Demon {
    DemonId id;
    std::string dtype;
    std::vector<std::pair<Path, WakeCond>> wake_conds;
    bool queued = false;
};

enum class CtrStatus { Active, Entailed };

struct ConstraintCell {
    CtrId id;
    Term rep;
    std::vector<VarId> vlist; // variables in first-occurrence order
    std::vector<Demon> demons;
    CtrStatus status = CtrStatus::Active;
};

/// How one narrowing changed a variable's domain; drives wake conditions.
struct DomainChange {
    bool dom = false;
    bool min = false;
    bool max = false;
    bool ground = false; // the variable became ground just now
};

/// A performed narrowing waiting to be dispatched to the variable's
/// constraint list.
struct PropEvent {
    VarId var;
    IntSet set; // the domain after the narrowing (the in_set view)
    CtrId source;
    DomainChange change;
};

struct PruneTarget {
    std::vector<PathStep> steps;
    VarId var;
};

enum class PruneOutcome { Noop, Changed, Failed };

class Kernel;

/// Per-functor behavior of a constraint: wake conditions, the posting hook
/// (internal constraints, early failures) and the filtering algorithm.
class ConstraintOps {
public:
    virtual ~ConstraintOps() = default;

    /// Shape check before anything is allocated; throws ProgramError.
    virtual void validate(const Term& source) const { (void)source; }

    /// Runs between begin_new_ctr and demon creation. Returns false when
    /// the constraint already failed (a fail event must have been emitted).
    virtual bool post(Kernel& k, ConstraintCell& cell) const {
        (void)k;
        (void)cell;
        return true;
    }

    virtual std::string demon_type(const Term& rep) const = 0;
    virtual std::vector<std::pair<Path, WakeCond>>
    wake_conds(const Term& rep) const = 0;

    /// The filtering algorithm: emits method/prune blocks through the
    /// kernel and reports entailment, delay or failure.
    virtual CtrResult filter(Kernel& k, ConstraintCell& cell) const = 0;
};

/// The execution state: variables and constraints, the demon ready queue,
/// the propagation queue, and the trace log. Single-threaded by design;
/// the whole state may move between threads between service calls.
class Kernel {
public:
    Kernel() = default;
    Kernel(const Kernel&) = delete;
    Kernel& operator=(const Kernel&) = delete;

    void register_constraint(std::string functor,
                             std::shared_ptr<const ConstraintOps> ops);

    // --- services ---

    /// Adds a constraint: interns it, registers variables and CLists,
    /// creates its demon, runs initial propagation and the fixpoint loop.
    /// The begin/end_new_ctr block brackets everything.
    CtrResult connect_ctr(const Term& source);

    /// Removes an entailed constraint from every CList and from the ready
    /// queue. Idempotent.
    void disconnect_ctr(const CtrId& id);

    /// Wakes the demons of one constraint whose conditions match the
    /// event's change, with push_demon_because/push_demon events. A demon
    /// already queued is not enqueued again.
    void enqueue_ctr(const CtrId& id, const PropEvent& e);

    /// Dequeues the first demon and runs its filtering algorithm inside a
    /// wake block. Requires an empty propagation queue.
    void dispatch_ctr();

    /// Applies one narrowing to a group of variables inside an open prune
    /// block: emits before_prune / prune / after_prune, narrows eagerly and
    /// queues one notification per changed variable.
    PruneResult enqueue_event(const CtrId& ctr, const Term& rep,
                              const std::vector<PruneTarget>& changed,
                              const IntSet& remove, const PruneFact& actual);

    /// Dequeues the oldest notification and calls enqueue_ctr for every
    /// constraint in the variable's CList, the source included.
    void dispatch_event();

    /// Alternates dispatch_event (higher priority) and dispatch_ctr until
    /// both queues are empty or the state failed; failure drains the queues.
    void run_to_fixpoint();

    // --- emission helpers for filtering methods ---

    void begin_method(const std::string& name);
    void end_method(PruneResult result);
    void info_method(const std::string& info_name, const Path& p,
                     const Term& entity, const Term& rep);
    void emit_fail(const Term& rep);
    void emit_fail_because(const CtrId& ctr, const Explanation& why,
                           const Term& rep);
    void emit_new_ctr_because(const CtrId& ctr, const Explanation& why,
                              const Term& rep);

    /// Whole prune block: begin_prune, optional prune_because, the triple,
    /// end_prune. Skips silently when no targeted variable would change.
    PruneOutcome apply_prune(const CtrId& ctr, const Term& rep,
                             const std::vector<PruneTarget>& targets,
                             const IntSet& remove, const PruneFact& intention,
                             const std::optional<Explanation>& why);

    bool would_change(const std::vector<PruneTarget>& targets,
                      const IntSet& remove) const;

    // --- state access ---

    bool failed() const { return failed_; }
    IdRegistry& registry() { return registry_; }
    const IdRegistry& registry() const { return registry_; }
    EventLog& log() { return log_; }
    const EventLog& log() const { return log_; }

    /// Interns a source term and makes sure its variables have cells;
    /// does not connect anything.
    std::pair<CtrId, Term> intern_source(const Term& source);

    VariableCell& ensure_variable(VarId v);
    const VariableCell* variable(VarId v) const;
    VariableCell* variable(VarId v);
    const ConstraintCell* constraint(const CtrId& id) const;

    const FiniteDomain& domain(VarId v) const;
    DomainFn domain_fn() const;
    std::vector<VarId> all_vars() const;
    std::vector<CtrId> constraint_ids() const { return ctr_order_; }

    std::size_t ready_queue_size() const { return ready_queue_.size(); }
    std::size_t propagation_queue_size() const {
        return propagation_queue_.size();
    }

    // --- backtracking support ---

    /// Captured domains, CLists, statuses and queues; the event log and the
    /// id counters are deliberately not part of it.
    struct Snapshot {
        std::map<VarId, VariableCell> variables;
        std::map<CtrId, CtrStatus> statuses;
        std::map<CtrId, bool> demon_queued;
        std::deque<DemonId> ready_queue;
        std::deque<PropEvent> propagation_queue;
        bool failed = false;
    };

    Snapshot snapshot() const;
    void restore(const Snapshot& s);

private:
    CtrResult run_demon(ConstraintCell& cell);
    void drain_queues();
    const ConstraintOps& ops_for(const std::string& functor) const;

    IdRegistry registry_;
    std::map<VarId, VariableCell> variables_;
    std::map<CtrId, ConstraintCell> constraints_;
    std::vector<CtrId> ctr_order_;
    std::map<std::string, std::shared_ptr<const ConstraintOps>> ops_;
    std::deque<DemonId> ready_queue_;
    std::deque<PropEvent> propagation_queue_;
    EventLog log_;
    bool failed_ = false;
};

} // namespace fdt

#endif
