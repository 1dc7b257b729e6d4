#ifndef BH_VALIDATE_HPP
#define BH_VALIDATE_HPP

#include <string>

#include "bh/instance.hpp"
#include "bh/solvers.hpp"

namespace bh {

// Independent re-check of a claimed hamiltonian path. Checks in order:
// vertex multiset, consecutive adjacency, fault avoidance, prescribed-edge
// containment, endpoints. Reports; never throws.
enum class ViolationKind { NotHamiltonian, NonEdgeStep, UsesFault, MissesPrescribed, WrongEndpoints };

struct Violation {
    ViolationKind kind;
    std::string detail;
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;

    void add(ViolationKind k, std::string detail) {
        ok = false;
        violations.push_back({k, std::move(detail)});
    }
};

ValidationReport validate_path(const Instance& inst, const Path& path);

inline const char* violation_name(ViolationKind k) {
    switch (k) {
        case ViolationKind::NotHamiltonian: return "NotHamiltonian";
        case ViolationKind::NonEdgeStep: return "NonEdgeStep";
        case ViolationKind::UsesFault: return "UsesFault";
        case ViolationKind::MissesPrescribed: return "MissesPrescribed";
        case ViolationKind::WrongEndpoints: return "WrongEndpoints";
    }
    return "?";
}

} // namespace bh

#endif
