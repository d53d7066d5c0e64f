#ifndef DISTLAW_FREEALG_HPP
#define DISTLAW_FREEALG_HPP

#include "distlaw/equality.hpp"

#include <functional>
#include <optional>

namespace distlaw {

struct Bounds {
    int max_carrier = 2;        // generator-set sizes for law checks
    int max_leaves = 2;         // leaves of generating terms, per layer
    ProveBudget prove{12, 50000};
    int countermodel_size = 3;
    int witness_layers = 2;     // operation layers in witness auto-search
    int perm_points = 4;        // fixed-point free permutations act on <= this
    long long element_cap = 200000; // resource guard on carrier enumeration
    long long micro_nodes = 500000; // search-node cap for table enumeration
};

// Finite slice of a free model: all equivalence classes with a representative
// of at most `bound` leaves over the given generator atoms (variables, or
// opaque constants when the algebra is stacked on another carrier).
struct FreeAlgebra {
    TheoryPtr theory;
    std::vector<Term> gens;
    int bound = 0;
    std::vector<Term> elems; // canonical forms, deduplicated, canonical order

    int index_of(const Term& canonical) const;
};

// Memoized; the cache is internally synchronized and the result is shared.
std::shared_ptr<const FreeAlgebra> enumerate(TheoryPtr th, const std::vector<Term>& gens,
                                             int bound, long long element_cap = 200000);

// Free-model structure maps. Elements are canonical terms over generator
// variables; `unit` injects a generator, `fmap` renames generators, and
// `mult` flattens an element whose generators are bound to inner elements.
Term unit_elem(const Theory& th, const Term& gen);
Term fmap_elem(const Theory& th, const Substitution& rename, const Term& elem);
Term mult_elem(const Theory& th, const Substitution& binding, const Term& outer);

struct MonadLawReport {
    bool ok = true;
    std::string law;      // which law failed
    std::string witness;  // offending instance, rendered
};

// Checks the unit and associativity laws on every element enumerable at the
// bounds. mult_override lets a test inject a deliberately broken multiplication.
// Nested layers use the first `nested_gen_cap` carrier elements (canonical
// order) as generators, so wide carriers stay tractable deterministically.
MonadLawReport check_monad_laws(
    TheoryPtr th, const std::vector<Term>& gens, int bound,
    const std::function<Term(const Theory&, const Substitution&, const Term&)>& mult_override = {},
    int nested_gen_cap = 30);

// ---------- separated terms ----------

// Mixed two-theory terms qualify operation heads with "s:" / "t:" so the two
// signatures never collide. A separated term is an outer T-layer whose index
// variables name inner S-terms.
struct SeparatedTerm {
    Term outer;                                        // T-term over index variables
    std::vector<std::pair<std::string, Term>> family;  // index -> S-term
};

struct RewriteRule {
    std::string name;
    Term lhs, rhs;
};

Term qualify(const Term& t, const Theory& S, const Theory& T); // tag op heads
Term unqualify(const Term& t);

// The distributivity program: every S-operation distributes argument-wise
// over the T-binary, and T-constants absorb whatever S-operation surrounds
// them. Terminating on mixed terms (the count of T-symbols under an
// S-symbol strictly drops).
std::vector<RewriteRule> times_over_plus_rules(const Theory& S, const Theory& T);

// Innermost exhaustive rewriting; throws on budget exhaustion.
Term rewrite_innermost(const Term& t, const std::vector<RewriteRule>& rules, long long max_steps);

// Rewrites the mixed term into separated shape and reads the layers off,
// normalizing both. Throws if the rules leave a T-symbol under an S-symbol.
SeparatedTerm separate(const Theory& S, const Theory& T, const std::vector<RewriteRule>& rules,
                       const Term& mixed, long long max_steps = 100000);

SeparatedTerm normalize_separated(const Theory& S, const Theory& T, const SeparatedTerm& u);

struct ModuloResult {
    Eq verdict = Eq::Unknown;
    std::map<std::string, int> g1, g2; // index -> class label
    std::string note;
};

// Equality of separated terms modulo (T,S): inner terms are grouped into
// S-classes, both outers are relabelled by class and compared in T. The
// class-quotient relabelling automatically satisfies the compatibility
// conditions between inner families.
ModuloResult equal_modulo(const Theory& S, const Theory& T, const SeparatedTerm& u,
                          const SeparatedTerm& v);

// Independent oracle: exhaustive search over all relabelling pairs into a
// small set; used by tests and kept apart from the class-quotient route.
std::optional<bool> equal_modulo_bruteforce(const Theory& S, const Theory& T,
                                            const SeparatedTerm& u, const SeparatedTerm& v);

} // namespace distlaw

#endif
