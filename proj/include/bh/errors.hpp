#ifndef BH_ERRORS_HPP
#define BH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bh {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionOutOfRange : Error {
    explicit DimensionOutOfRange(const std::string& w) : Error(w) {}
};

struct NotAnEdge : Error {
    explicit NotAnEdge(const std::string& w) : Error(w) {}
};

struct NotAForest : Error {
    explicit NotAForest(const std::string& w) : Error(w) {}
};

struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& w) : Error(w) {}
};

struct FaultForestOverlap : Error {
    explicit FaultForestOverlap(const std::string& w) : Error(w) {}
};

struct SameParityEndpoints : Error {
    explicit SameParityEndpoints(const std::string& w) : Error(w) {}
};

struct Incompatible : Error {
    explicit Incompatible(const std::string& w) : Error(w) {}
};

// Only j=0 would qualify as a partition dimension; the construction does not
// partition along dimension 0.
struct NoAdmissibleDimension : Error {
    explicit NoAdmissibleDimension(const std::string& w) : Error(w) {}
};

struct UnsupportedCase : Error {
    explicit UnsupportedCase(const std::string& w) : Error(w) {}
};

// A lemma-backed candidate search came up empty, or a splice could not be
// assembled. Under the stated preconditions this indicates a bug, so the
// message carries the full search context.
struct ConstructionFailure : Error {
    explicit ConstructionFailure(const std::string& w) : Error(w) {}
};

struct NoCandidate : ConstructionFailure {
    explicit NoCandidate(const std::string& w) : ConstructionFailure(w) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& w) : Error(w) {}
};

// A search hit its node budget; distinct from infeasibility.
struct SearchBudgetError : Error {
    explicit SearchBudgetError(const std::string& w) : Error(w) {}
};

} // namespace bh

#endif
