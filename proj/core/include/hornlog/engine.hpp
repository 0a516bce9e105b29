#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hornlog/ast.hpp"
#include "hornlog/match.hpp"
#include "hornlog/morphism.hpp"

namespace hornlog {

enum class Strategy { Naive, Seminaive };
enum class Strictness { Warn, Error };

struct EvalConfig {
    /// When unset: unbounded for all-surjective theories, 10000 otherwise.
    std::optional<std::size_t> max_iterations;
    Strategy strategy = Strategy::Seminaive;
    Strictness strictness = Strictness::Warn;
    /// The theory is the flattening of an epic PHL theory plus functionality
    /// sequents, so its models are free rather than weakly free.
    bool epic_origin = false;
};

struct IterationStats {
    std::size_t matches_found = 0;
    std::size_t matches_fired = 0;
    std::size_t tuples_added = 0;
    std::size_t merges = 0;
    std::size_t elements_created = 0;

    bool changed() const { return tuples_added || merges || elements_created; }
};

struct EvalReport {
    std::vector<IterationStats> per_iteration;
    bool fixed_point = false;
    std::vector<std::string> warnings;

    std::size_t iterations() const { return per_iteration.size(); }
    IterationStats totals() const;
};

struct EvalResult {
    StructurePtr model;
    /// input -> model
    Morphism unit;
    EvalReport report;
};

/// The iteration budget ran out before a fixed point.
class BudgetExhausted : public std::runtime_error {
public:
    BudgetExhausted(Structure partial, EvalReport report);

    const Structure& partial() const { return partial_; }
    const EvalReport& report() const { return report_; }

private:
    Structure partial_;
    EvalReport report_;
};

/// Runs the theory to a fixed point from x. Each round collects the matches of
/// every sequent against the structure as it stood at the start of the round,
/// sorts them by (sequent, assignment), and fires those that do not already
/// extend over the conclusion. Throws PreconditionError for non-RHL input and,
/// under Strictness::Error, for theories whose result is only weakly free.
EvalResult evaluate(const Theory& t, const StructurePtr& x, const EvalConfig& cfg = {});
EvalResult evaluate(const Theory& t, const Structure& x, const EvalConfig& cfg = {});

bool all_surjective(const Theory& t);

/// Every premise interpretation extends over the conclusion.
bool satisfies(const Structure& x, const Sequent& s);
bool satisfies(const Structure& x, const Theory& t);

/// The first premise interpretation, in enumeration order, that does not
/// extend. Values are indexed like compile(s).variables.
std::optional<Match> first_counterexample(const Structure& x, const Sequent& s);

}  // namespace hornlog
