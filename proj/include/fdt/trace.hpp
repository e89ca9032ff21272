#ifndef FDT_TRACE_HPP
#define FDT_TRACE_HPP

#include <functional>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "fdt/domain.hpp"
#include "fdt/explanation.hpp"
#include "fdt/path.hpp"
#include "fdt/term.hpp"

namespace fdt {

using EventId = int;

enum class CtrResult { Fail, Delay, Entail };
enum class PruneResult { Succeed, Fail };
enum class WakeCond { Min, Max, MinMax, Val, Dom };

std::string ctr_result_name(CtrResult r);
std::string prune_result_name(PruneResult r);
std::string wake_cond_name(WakeCond c);

/// Intended or actual pruning: removal of one value or of a value set.
struct PruneFact {
    enum class Kind { Value, Values };
    Kind kind = Kind::Value;
    std::int64_t value = 0;
    IntSet values;

    static PruneFact remove_value(std::int64_t v);
    static PruneFact remove_values(IntSet s);
    /// The removed set regardless of form.
    IntSet as_set() const;
    /// Actual removals collapse singleton sets to remove_value.
    static PruneFact normalized(const IntSet& s);

    bool operator==(const PruneFact&) const = default;
};

// --- Event payloads, one struct per event type -----------------------------

struct BeginNewCtr { CtrId ctr; Term rep; };
struct EndNewCtr { CtrResult result = CtrResult::Delay; };
struct NewDemon {
    DemonId demon;
    std::string dtype;
    std::vector<std::pair<Path, WakeCond>> wake_conds;
    Term rep;
};
struct PushDemon { DemonId demon; std::string dtype; };
struct BeginWakeDemon { DemonId demon; std::string dtype; };
struct EndWakeDemon { CtrResult result = CtrResult::Delay; };
struct BeginPrune { PruneFact intention; Term rep; };
struct EndPrune { PruneResult result = PruneResult::Succeed; };
struct PruneEv {
    CtrId ctr;
    Path pruned_vars;
    PruneFact pruning;
    Term rep;
    PruneResult result = PruneResult::Succeed;
};
struct BeforePrune { Path pruned_vars; std::vector<FiniteDomain> domains; Term rep; };
struct AfterPrune { Path pruned_vars; std::vector<FiniteDomain> domains; Term rep; };
struct FailEv { Term rep; };
struct PushDemonBecause { Path vars; WakeCond cond = WakeCond::Dom; Term rep; };
struct PruneBecause { CtrId ctr; Explanation expl; Term rep; };
struct FailBecause { CtrId ctr; Explanation expl; Term rep; };
struct NewCtrBecause { CtrId ctr; Explanation expl; Term rep; };
struct BeginMethod { std::string name; };
struct EndMethod { PruneResult result = PruneResult::Succeed; };
struct InfoMethod { std::string info_name; Path path; Term entity; Term rep; };

using EventData =
    std::variant<BeginNewCtr, EndNewCtr, NewDemon, PushDemon, BeginWakeDemon,
                 EndWakeDemon, BeginPrune, EndPrune, PruneEv, BeforePrune,
                 AfterPrune, FailEv, PushDemonBecause, PruneBecause, FailBecause,
                 NewCtrBecause, BeginMethod, EndMethod, InfoMethod>;

struct TraceEvent {
    EventId id = 0;
    EventData data;
};

/// Event type name as it appears at the head of the serialized fact.
std::string event_name(const TraceEvent& e);

/// Whole event as a term, id included as the first argument.
Term event_to_term(const TraceEvent& e);
TraceEvent event_from_term(const Term& t);

/// One line of the trace file; parse_event(serialize_event(e)) == e.
std::string serialize_event(const TraceEvent& e);
TraceEvent parse_event(std::string_view line);

// --- Selector queries -------------------------------------------------------

/// An integer selects by id, an atom by event-type name, a compound term
/// matches the event's arguments with wildcards standing for anything.
struct Selector {
    enum class Kind { ById, ByName, ByPattern };
    Kind kind = Kind::ById;
    std::int64_t id = 0;
    std::string name;
    Term pattern;
};

Selector parse_selector(std::string_view text);
bool selector_matches(const Selector& sel, const TraceEvent& e);

// --- The log -----------------------------------------------------------------

/// Append-only event log; ids are exactly 1..n in order and are never
/// reused, not even across backtracking.
class EventLog {
public:
    EventId emit(EventData data);

    const std::vector<TraceEvent>& events() const { return events_; }
    std::size_t size() const { return events_.size(); }

    std::vector<TraceEvent> get_events(const Selector& sel) const;

    /// Called after each append; used for streaming and for emission-state
    /// checks in tests.
    void set_observer(std::function<void(const TraceEvent&)> obs) {
        observer_ = std::move(obs);
    }

private:
    std::vector<TraceEvent> events_;
    std::function<void(const TraceEvent&)> observer_;
};

std::vector<TraceEvent> get_events(const std::vector<TraceEvent>& log,
                                   const Selector& sel);

// --- Structure validation ----------------------------------------------------

struct Violation {
    EventId event_id = 0;
    std::string message;
};

/// Checks block structure: matching begin/end kinds, proper nesting, the
/// before/prune/after triple with identical paths and consistent domains,
/// placement of *_because events, id numbering, and block result
/// consistency. Violations are data, not errors.
std::vector<Violation> validate_nesting(const std::vector<TraceEvent>& log);

std::vector<TraceEvent> parse_log(std::istream& in);
void write_log(std::ostream& out, const std::vector<TraceEvent>& log);

} // namespace fdt

#endif
