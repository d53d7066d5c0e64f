#ifndef DISTLAW_EQUALITY_HPP
#define DISTLAW_EQUALITY_HPP

#include "distlaw/theory.hpp"

#include <optional>

namespace distlaw {

enum class Eq { Equal, Distinct, Unknown };

struct ProofStep {
    std::string axiom;
    std::vector<int> path; // child indices from the root, 1-based
    Substitution subst;
    bool forward = true;
    Term result; // term after this step
};

struct ProofTrace {
    Term start;
    std::vector<ProofStep> steps;
};

struct FiniteModel {
    int size = 0;
    // row-major tables, one per operation symbol; constants are 1-entry tables
    std::map<std::string, std::vector<int>> tables;
    std::map<std::string, int> assignment; // separating variable assignment

    int eval(const Term& t) const;
    bool satisfies(const std::vector<Equation>& eqs) const;
};

struct EqVerdict {
    Eq verdict = Eq::Unknown;
    std::optional<Term> nf1, nf2;      // shared/differing canonical forms
    std::optional<ProofTrace> trace;   // equational proof (generic backend)
    std::optional<FiniteModel> model;  // finite countermodel
    std::string report;                // budget report for Unknown

    bool equal() const { return verdict == Eq::Equal; }
    bool distinct() const { return verdict == Eq::Distinct; }
};

struct ProveBudget {
    int max_term_nodes = 12;
    int max_states = 50000;
};

// True when the theory has a canonical-form oracle (every catalog backend).
bool has_normal_forms(const Theory& th);

// Canonical representative of t's equivalence class. Throws for generic
// theories. Idempotent: normalize(normalize(t)) == normalize(t).
Term normalize(const Theory& th, const Term& t);

// Catalog theories always answer Equal or Distinct; generic theories fall
// back to bounded proof search and countermodel search and may say Unknown.
EqVerdict decide_equal(const Theory& th, const Term& a, const Term& b);
EqVerdict decide_equal(const Theory& th, const Term& a, const Term& b, ProveBudget budget,
                       int countermodel_size);

// Breadth-first closure under one-step axiom application, both directions,
// any position, any matching substitution with instance size below budget.
// Never answers Distinct. extra_axioms join the theory's own equations
// (the no-go chains feed derived annihilation facts through here).
EqVerdict bounded_prove(const Theory& th, const Term& a, const Term& b, ProveBudget budget,
                        const std::vector<Equation>& extra_axioms = {});

// Smallest model of the theory with carrier size <= max_size separating a
// and b under some assignment; nullopt when none exists within the bound.
std::optional<FiniteModel> find_countermodel(const Theory& th, const Term& a, const Term& b,
                                             int max_size);

// Metaproperty certificate; called once by Theory::finalize.
MetaCertificate certify_meta(const Theory& th);

// Internal normal forms, exposed for tests and the free-algebra layer.
Term boom_normalize(const MagmaFlags& f, const Term& t, const std::string& op,
                    const std::string& unit);
std::vector<std::string> band_canonical_word(const std::vector<std::string>& word);
Term lattice_normalize(const Term& t);
bool lattice_leq(const Term& a, const Term& b); // constants already eliminated

} // namespace distlaw

#endif
