#ifndef DISTLAW_THEORY_HPP
#define DISTLAW_THEORY_HPP

#include "distlaw/term.hpp"

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace distlaw {

// Which decision procedure backs provable equality for a theory.
enum class BackendKind {
    Boom,           // one binary op, any subset of {unit, assoc, comm, idem}
    AbelianGroup,
    Convex,         // binary family +@{p}, p in (0,1)
    Reader2,        // two-state reader clone
    BoundedLattice, // Whitman's procedure with top/bottom
    Exceptions,     // constants only, no equations
    Composite,      // polynomial-style two-layer theory (sums of monomials)
    Generic,        // bounded proof search + finite countermodels
};

struct MagmaFlags {
    bool unital = false, assoc = false, comm = false, idem = false;
};

enum class Provenance { BuiltinAudited, Computed, UserAsserted };

// Metaproperty certificate consumed by the no-go checkers. Flags carry
// provenance: builtin oracles get audited flags backed by the documented
// normal-form structure, generic theories only get what the user asserts
// plus what finitely many equality obligations can establish.
struct MetaCertificate {
    bool consistent = false;
    bool variable_faithful = false;          // vars(t) = vars(nf(t)) for all t
    bool closed_terms_are_constants = false; // every closed class is a declared constant's
    int constant_count = 0;                  // distinct constant classes
    std::vector<Term> constant_classes;
    bool all_ops_unital_or_idempotent = false;
    bool linear_presentation = false;
    bool weak_constant_stability = false;    // t[f] = e for a renaming f implies t = e
    std::map<std::string, Provenance> provenance;
    std::vector<std::string> notes;          // per-flag audit arguments / checked obligations

    bool flag(const std::string& name) const;
    Provenance prov(const std::string& name) const;
};

struct TheoryPresentation {
    std::string name;
    Signature sig;
    std::vector<Equation> eqs;
    std::set<std::string> asserts;      // metaproperties taken on trust for generic theories
    std::set<std::string> exclude_ops;  // stable universal term set given by exclusion
    std::string oracle_id;              // catalog id when backend is builtin, else "generic"
};

class Theory;
using TheoryPtr = std::shared_ptr<const Theory>;

class Theory {
public:
    TheoryPresentation pres;
    BackendKind backend = BackendKind::Generic;
    MagmaFlags flags;                    // Boom
    MagmaFlags outer_flags, inner_flags; // Composite: outer sum layer, inner product layer
    std::vector<std::string> labels;     // Exceptions
    MetaCertificate meta;

    const std::string& name() const { return pres.name; }
    const Signature& sig() const { return pres.sig; }
    const std::vector<Equation>& eqs() const { return pres.eqs; }

    // Convex terms form an infinite symbol family; free-algebra enumeration
    // draws parameters from this finite set.
    std::vector<Rational> enum_params;

    static TheoryPtr finalize(Theory t); // computes the certificate, returns shared handle
};

// Catalog ids: the sixteen Boom-hierarchy theories ("", I, C, CI, A, AI, AC,
// ACI, U, UI, UC, UCI, UA, UAI, UAC, UACI — spelled "Empty" for the first),
// AbelianGroup, BoundedLattice, Convex, Reader2, Maybe, Exception{l1,l2,...},
// and the six composite theories MT, ML, MM, PT, PL, PM.
bool is_catalog_id(const std::string& id);
TheoryPtr load_catalog(const std::string& id);
std::vector<std::string> catalog_ids(); // the 28 stock entries

// Conventional symbol names used by the builtin presentations.
namespace sym {
inline const std::string binop = "*";
inline const std::string unit = "e";
inline const std::string plus = "+";
inline const std::string times = "*";
inline const std::string zero = "0";
inline const std::string one = "1";
inline const std::string join = "or";
inline const std::string meet = "and";
inline const std::string top = "top";
inline const std::string bot = "bot";
inline const std::string cvx = "+";
inline const std::string neg = "neg";
} // namespace sym

} // namespace distlaw

#endif
