#pragma once

#include "zex/catalog.hpp"
#include "zex/cocycles.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace zex {

struct ExtensionSpec {
    Algebra base;
    std::vector<BilinearForm> thetas;
    std::vector<std::string> names;  // optional, used in error messages
};

// A_θ on base ⊕ V; the new central vectors follow the base basis in θ order.
Algebra extend(const ExtensionSpec& spec);

struct NonsplitReport {
    std::size_t class_rank = 0;   // rank of the θ classes in H²
    std::size_t s = 0;
    Subspace intersection;        // ann(θ) ∩ ann(A)
    bool independent() const { return class_rank == s; }
    bool ts_zero() const { return intersection.dim() == 0; }
    bool nonsplit() const { return independent() && ts_zero(); }
    std::string diagnostics() const;
};

NonsplitReport is_nonsplit(const ExtensionSpec& spec);

// A has an annihilator component iff ann(A) is not contained in A².
bool has_annihilator_component(const Algebra& a);

struct RecoveredExtension {
    Algebra base;
    std::vector<BilinearForm> thetas;
    Matrix basis;  // columns: complement representatives, then the ann basis
};

class ZeroAnnihilator : public std::invalid_argument {
public:
    ZeroAnnihilator() : std::invalid_argument("algebra has zero annihilator") {}
};

RecoveredExtension recover_extension(const Algebra& a);
// Same construction over a chosen central ideal V ⊆ ann(a).
RecoveredExtension recover_extension(const Algebra& a, const Subspace& central);

struct F0Report {
    std::size_t n = 0, trials = 0;
    std::uint64_t seed = 0;
    std::size_t accepted = 0, excluded = 0, null_filiform = 0;
    std::vector<std::string> counterexamples;
    bool pass() const { return accepted == trials && null_filiform == accepted; }
};

F0Report check_f0_theorem(std::size_t n, std::size_t trials, std::uint64_t seed);

// zext v1:
//   zext 1
//   base <family id>        or   base-file <path>
//   form <name> : <p/q> <i> <j> ...
std::string print_zext(const std::string& base_ref, const std::vector<NamedForm>& forms);
ExtensionSpec parse_zext(const std::string& text, const std::function<std::string(const std::string&)>& read_file);

}  // namespace zex
