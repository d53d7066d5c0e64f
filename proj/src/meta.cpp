#include "distlaw/equality.hpp"

#include <algorithm>
#include <functional>

namespace distlaw {

namespace {

bool linear_equations(const std::vector<Equation>& eqs) {
    auto occurrences = [](const Term& t) {
        std::map<std::string, int> counts;
        std::function<void(const Term&)> walk = [&](const Term& u) {
            if (u.is_var()) { counts[u.head()]++; return; }
            for (const auto& a : u.args()) walk(a);
        };
        walk(t);
        return counts;
    };
    for (const auto& eq : eqs) {
        auto l = occurrences(eq.lhs), r = occurrences(eq.rhs);
        if (l != r) return false;
        for (const auto& [x, c] : l)
            if (c != 1) return false;
    }
    return true;
}

// decide_equal obligations: an operation counts when it is idempotent or has
// a declared constant acting as a unit in every argument position
bool ops_unital_or_idempotent(const Theory& th, std::vector<std::string>& notes) {
    for (const auto& [op, info] : th.sig().ops) {
        if (info.arity == 0) continue;
        std::vector<Term> xs;
        for (int i = 0; i < info.arity; ++i) xs.push_back(Term::var("x" + std::to_string(i)));
        auto probe = [&](const Term& lhs, const Term& rhs) {
            if (has_normal_forms(th)) return decide_equal(th, lhs, rhs).equal();
            return bounded_prove(th, lhs, rhs, ProveBudget{10, 2000}).equal();
        };
        auto mk = [&](const std::vector<Term>& args) {
            return Term::app(op, info.param_family ? std::optional<Rational>(th.enum_params.empty()
                                                         ? Rational(1, 2)
                                                         : th.enum_params.front())
                                                   : std::nullopt,
                             args);
        };
        // idempotence: op(x,...,x) = x
        Term x = Term::var("x");
        if (probe(mk(std::vector<Term>(static_cast<size_t>(info.arity), x)), x)) {
            notes.push_back(op + ": idempotent");
            continue;
        }
        bool unital = false;
        for (const auto& c : th.sig().constants()) {
            bool all = true;
            for (int i = 0; i < info.arity && all; ++i) {
                std::vector<Term> args(static_cast<size_t>(info.arity), Term::constant(c));
                args[static_cast<size_t>(i)] = x;
                if (!probe(mk(args), x)) all = false;
            }
            if (all) {
                notes.push_back(op + ": unit " + c);
                unital = true;
                break;
            }
        }
        if (!unital) return false;
    }
    return true;
}

void set_all(MetaCertificate& m, Provenance p) {
    for (const char* f : {"consistent", "variable_faithful", "closed_terms_are_constants",
                          "all_ops_unital_or_idempotent", "weak_constant_stability"})
        m.provenance[f] = p;
}

} // namespace

MetaCertificate certify_meta(const Theory& th) {
    MetaCertificate m;
    m.linear_presentation = linear_equations(th.eqs());
    m.provenance["linear_presentation"] = Provenance::Computed;

    // distinct constant classes
    std::vector<Term> classes;
    for (const auto& c : th.sig().constants()) {
        Term cls = has_normal_forms(th) ? normalize(th, Term::constant(c)) : Term::constant(c);
        bool fresh = true;
        for (const auto& seen : classes) {
            if (has_normal_forms(th)) {
                if (seen == cls) { fresh = false; break; }
            } else {
                // without an oracle, constants count as distinct only when a
                // finite model separates them
                if (!find_countermodel(th, seen, cls, 2)) { fresh = false; break; }
            }
        }
        if (fresh) classes.push_back(cls);
    }
    m.constant_classes = classes;
    m.constant_count = static_cast<int>(classes.size());
    m.provenance["constant_count"] = Provenance::Computed;

    std::vector<std::string> op_notes;
    m.all_ops_unital_or_idempotent = ops_unital_or_idempotent(th, op_notes);
    m.provenance["all_ops_unital_or_idempotent"] = Provenance::Computed;
    for (auto& n : op_notes) m.notes.push_back("op check: " + n);

    switch (th.backend) {
        case BackendKind::Boom:
            set_all(m, Provenance::BuiltinAudited);
            m.consistent = true;
            m.variable_faithful = true;
            m.notes.push_back("every axiom has the same variable set on both sides");
            m.closed_terms_are_constants = true; // only closed class is the unit, if any
            m.weak_constant_stability = true;    // from the two flags above
            break;
        case BackendKind::AbelianGroup:
            set_all(m, Provenance::BuiltinAudited);
            m.consistent = true;
            m.variable_faithful = false;
            m.notes.push_back("inverses cancel variables: x + neg(x) = 0");
            m.closed_terms_are_constants = true; // every closed combination collapses to 0
            m.weak_constant_stability = false;   // (x + neg(y))[x/y] = 0 but x + neg(y) != 0
            break;
        case BackendKind::Convex:
            set_all(m, Provenance::BuiltinAudited);
            m.consistent = true;
            m.variable_faithful = true;
            m.notes.push_back("weights stay in (0,1), so the support never shrinks");
            m.closed_terms_are_constants = true; // no closed terms at all
            m.weak_constant_stability = true;    // vacuous: no constants
            break;
        case BackendKind::Reader2:
            set_all(m, Provenance::BuiltinAudited);
            m.consistent = true;
            m.variable_faithful = false;
            m.notes.push_back("(w*x)*(y*z) = w*z drops x and y");
            m.closed_terms_are_constants = true; // no closed terms
            m.weak_constant_stability = true;    // vacuous: no constants
            break;
        case BackendKind::BoundedLattice:
            set_all(m, Provenance::BuiltinAudited);
            m.consistent = true;
            m.variable_faithful = false;
            m.notes.push_back("absorption drops variables: x or (x and y) = x");
            m.closed_terms_are_constants = true; // closed classes are top and bottom
            m.weak_constant_stability = true;
            m.notes.push_back("renaming keeps constant-free canonical forms constant-free");
            break;
        case BackendKind::Exceptions:
            set_all(m, Provenance::BuiltinAudited);
            m.consistent = true;
            m.variable_faithful = true; // no equations
            m.closed_terms_are_constants = true;
            m.weak_constant_stability = true;
            break;
        case BackendKind::Composite:
            set_all(m, Provenance::BuiltinAudited);
            m.consistent = true;
            m.variable_faithful = false;
            m.notes.push_back("zero absorption drops variables: x * 0 = 0");
            // sums of closed monomials (1 + 1 and friends) are closed classes
            // beyond the two constants unless the sum is idempotent
            m.closed_terms_are_constants = th.outer_flags.idem;
            m.weak_constant_stability = true;
            m.notes.push_back(
                "renamings preserve monomial count and closedness, so only 0 maps to 0 "
                "and only 1 maps to 1");
            break;
        case BackendKind::Generic: {
            set_all(m, Provenance::UserAsserted);
            // what can be established by finite evidence is computed
            if (find_countermodel(th, Term::var("x"), Term::var("y"), 2)) {
                m.consistent = true;
                m.provenance["consistent"] = Provenance::Computed;
                m.notes.push_back("consistency: a finite model separates two variables");
            }
            m.provenance["all_ops_unital_or_idempotent"] = Provenance::Computed;
            for (const auto& a : th.pres.asserts) {
                if (a == "consistent" && !m.consistent) {
                    m.consistent = true;
                    m.provenance["consistent"] = Provenance::UserAsserted;
                } else if (a == "variable_faithful") {
                    m.variable_faithful = true;
                } else if (a == "closed_terms_are_constants") {
                    m.closed_terms_are_constants = true;
                } else if (a == "weak_constant_stability") {
                    m.weak_constant_stability = true;
                } else if (a == "all_ops_unital_or_idempotent" &&
                           !m.all_ops_unital_or_idempotent) {
                    m.all_ops_unital_or_idempotent = true;
                    m.provenance["all_ops_unital_or_idempotent"] = Provenance::UserAsserted;
                } else if (a == "linear_presentation") {
                    // always computed syntactically; the assert is redundant
                }
            }
            break;
        }
    }
    return m;
}

} // namespace distlaw
