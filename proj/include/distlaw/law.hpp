#ifndef DISTLAW_LAW_HPP
#define DISTLAW_LAW_HPP

#include "distlaw/freealg.hpp"

namespace distlaw {

// Values at the different composite components (T-classes, S-classes, nested
// images) are interned as opaque atom variables so each layer's normalizer
// only ever sees its own signature. Interning is by canonical text, so equal
// values share an atom within one pool.
class AtomPool {
public:
    Term atom(const Term& value);             // var("p<i>")
    const Term& value_of(const std::string& atom_name) const;
    bool is_atom(const std::string& name) const;
    Term expand(const Term& t) const;         // substitute atom values recursively

private:
    std::map<std::string, int> index_;
    std::vector<Term> values_;
};

enum class LawKind { TimesOverPlus, ExceptionSweep, ManesMulryFaulty, UserProgram };

struct CandidateLaw {
    std::string name;
    LawKind kind = LawKind::TimesOverPlus;
    std::vector<RewriteRule> program; // user rewrite programs
};

CandidateLaw builtin_law(const std::string& name); // times-over-plus, exception-sweep,
                                                   // manes-mulry-faulty

// One application of the law at an arbitrary component. The element is an
// S-term over atom variables naming T-classes; the result is a T-term over
// atom variables naming S-classes. Rewrite-backed laws separate the mixed
// term and read the layers off, so unnormalized program output cannot leak.
Term apply_law(const CandidateLaw& law, const Theory& S, const Theory& T, AtomPool& pool,
               const Term& elem);

struct AxiomResult {
    bool pass = true;
    std::string instance; // offending input, atoms expanded
    std::string lhs, rhs; // the two path values
    std::string fn;       // the function, for naturality failures
};

struct BeckReport {
    AxiomResult unit1, unit2, mult1, mult2, naturality;
    bool complete = true;  // false when a resource cap cut the check short
    std::string cap_note;
    bool all_pass() const {
        return unit1.pass && unit2.pass && mult1.pass && mult2.pass && naturality.pass;
    }
};

// Checks the two unit axioms, the two multiplication axioms and naturality
// on every element enumerable at the bounds; first failure per axiom is
// reported in canonical enumeration order.
BeckReport check_beck(const CandidateLaw& law, TheoryPtr S, TheoryPtr T, const Bounds& bounds);

// renders the failing square as a small two-path diagram
std::string render_failure(const std::string& axiom, const AxiomResult& r);

struct MicroSearchResult {
    bool exhausted = true;       // false when the node cap aborted the search
    long long nodes = 0;
    int survivors = 0;
    bool contains_times_over_plus = false;
    std::vector<std::string> survivor_digests; // canonical table serializations
};

// Enumerates all law tables on the carriers at tiny bounds that satisfy both
// unit axioms, pruning by naturality and by the multiplication instances
// expressible at those bounds. Survivors are candidates only; exhaustion is
// evidence consistent with non-existence, never a proof.
MicroSearchResult micro_search(TheoryPtr S, TheoryPtr T, const Bounds& bounds);

} // namespace distlaw

#endif
