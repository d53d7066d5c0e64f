#include "distlaw/law.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace distlaw {

Term AtomPool::atom(const Term& value) {
    std::string key = value.key();
    auto it = index_.find(key);
    if (it != index_.end()) return Term::var("p" + std::to_string(it->second));
    int id = static_cast<int>(values_.size());
    index_[key] = id;
    values_.push_back(value);
    return Term::var("p" + std::to_string(id));
}

bool AtomPool::is_atom(const std::string& name) const {
    if (name.size() < 2 || name[0] != 'p') return false;
    for (size_t i = 1; i < name.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
    size_t id = std::stoul(name.substr(1));
    return id < values_.size();
}

const Term& AtomPool::value_of(const std::string& atom_name) const {
    return values_.at(std::stoul(atom_name.substr(1)));
}

Term AtomPool::expand(const Term& t) const {
    if (t.is_var()) {
        if (is_atom(t.head())) return expand(value_of(t.head()));
        return t;
    }
    if (t.args().empty()) return t;
    std::vector<Term> args;
    for (const auto& a : t.args()) args.push_back(expand(a));
    return Term::app(t.head(), t.param(), std::move(args));
}

CandidateLaw builtin_law(const std::string& name) {
    if (name == "times-over-plus") return {name, LawKind::TimesOverPlus, {}};
    if (name == "exception-sweep") return {name, LawKind::ExceptionSweep, {}};
    if (name == "manes-mulry-faulty") return {name, LawKind::ManesMulryFaulty, {}};
    throw std::invalid_argument("unknown builtin law '" + name + "'");
}

namespace {

Term qualify_layer(const Term& t, const std::string& prefix) {
    if (t.is_var()) return t;
    std::vector<Term> args;
    for (const auto& a : t.args()) args.push_back(qualify_layer(a, prefix));
    return Term::app(prefix + t.head(), t.param(), std::move(args));
}

// the mixed term for a rewrite-backed law: the element's S-structure over
// the unboxed T-values of its atoms
Term mixed_term(const AtomPool& pool, const Term& elem) {
    if (elem.is_var()) {
        if (pool.is_atom(elem.head())) return qualify_layer(pool.value_of(elem.head()), "t:");
        return elem; // a bare variable is the T-class of that variable
    }
    std::vector<Term> args;
    for (const auto& a : elem.args()) args.push_back(mixed_term(pool, a));
    return Term::app("s:" + elem.head(), elem.param(), std::move(args));
}

void word_letters(const Term& t, const std::string& op, const std::string& unit,
                  std::vector<Term>& out) {
    if (t.is_app() && t.head() == op) {
        word_letters(t.args()[0], op, unit, out);
        word_letters(t.args()[1], op, unit, out);
        return;
    }
    if (t.is_const() && t.head() == unit) return;
    out.push_back(t);
}

Term apply_exception_sweep(const Theory& S, const Theory& T, AtomPool& pool, const Term& elem) {
    if (S.backend != BackendKind::Exceptions)
        throw std::invalid_argument("exception-sweep needs an exception theory on the left");
    if (elem.is_const()) {
        // an exception: the unit of T over its singleton class
        return pool.atom(normalize(S, elem));
    }
    // a T-class: wrap every generator in its singleton S-class
    Term tval = pool.is_atom(elem.head()) ? pool.value_of(elem.head()) : elem;
    Substitution wrap;
    for (const auto& x : vars(tval)) wrap[x] = pool.atom(normalize(S, Term::var(x)));
    return normalize(T, substitute(tval, wrap));
}

Term apply_manes_mulry(const Theory& S, const Theory& T, AtomPool& pool, const Term& elem) {
    if (S.backend != BackendKind::Boom || !S.flags.unital || !S.flags.assoc || S.flags.comm)
        throw std::invalid_argument("the faulty sweep law is defined on words (theory UA)");
    if (T.backend != BackendKind::Exceptions)
        throw std::invalid_argument("the faulty sweep law needs an exception theory on the right");
    std::vector<Term> letters;
    word_letters(elem, sym::binop, sym::unit, letters);
    auto value = [&](const Term& letter) {
        return pool.is_atom(letter.head()) ? pool.value_of(letter.head()) : letter;
    };
    auto exceptional = [&](const Term& letter) {
        Term v = value(letter);
        return v.is_const() && T.sig().declares(v.head());
    };
    if (letters.empty()) return pool.atom(normalize(S, Term::constant(sym::unit)));
    if (letters.size() == 1 && exceptional(letters[0])) return value(letters[0]);
    bool any = false;
    for (const auto& l : letters) any = any || exceptional(l);
    if (!any) {
        Term word = value(letters[0]);
        for (size_t i = 1; i < letters.size(); ++i)
            word = Term::app(sym::binop, {word, value(letters[i])});
        return pool.atom(normalize(S, word));
    }
    return Term::constant(T.labels.front());
}

} // namespace

Term apply_law(const CandidateLaw& law, const Theory& S, const Theory& T, AtomPool& pool,
               const Term& elem) {
    switch (law.kind) {
        case LawKind::ExceptionSweep:
            return apply_exception_sweep(S, T, pool, elem);
        case LawKind::ManesMulryFaulty:
            return apply_manes_mulry(S, T, pool, elem);
        case LawKind::TimesOverPlus:
        case LawKind::UserProgram: {
            auto rules = law.kind == LawKind::TimesOverPlus ? times_over_plus_rules(S, T)
                                                            : law.program;
            Term mixed = mixed_term(pool, elem);
            SeparatedTerm sep = separate(S, T, rules, mixed);
            Substitution subst;
            for (const auto& [name, inner] : sep.family)
                subst[name] = pool.atom(has_normal_forms(S) ? normalize(S, inner) : inner);
            return normalize(T, substitute(sep.outer, subst));
        }
    }
    throw std::logic_error("unreachable");
}

namespace {

std::vector<Term> base_vars(int k) {
    static const char* names[] = {"a", "b", "c", "d"};
    std::vector<Term> out;
    for (int i = 0; i < k && i < 4; ++i) out.push_back(Term::var(names[i]));
    return out;
}

std::vector<Term> atoms_of(AtomPool& pool, const std::vector<Term>& values) {
    std::vector<Term> out;
    for (const auto& v : values) out.push_back(pool.atom(v));
    return out;
}

} // namespace

BeckReport check_beck(const CandidateLaw& law, TheoryPtr S, TheoryPtr T, const Bounds& bounds) {
    BeckReport rep;
    AtomPool pool;
    int k = bounds.max_carrier;
    int B = bounds.max_leaves;

    auto lam = [&](const Term& e) { return apply_law(law, *S, *T, pool, e); };
    auto expand = [&](const Term& t) { return pool.expand(t).str(); };

    try {
        std::vector<Term> X = base_vars(k);
        auto TX = enumerate(T, X, B, bounds.element_cap);
        std::vector<Term> atomsTX = atoms_of(pool, TX->elems);
        auto STX = enumerate(S, atomsTX, B, bounds.element_cap);

        // unit 1: the law on a unit-wrapped T-element yields its generator-wise image
        for (const auto& tx : TX->elems) {
            Term input = pool.atom(tx);
            Term lhs = lam(input);
            Substitution wrap;
            for (const auto& x : vars(tx)) wrap[x] = pool.atom(normalize(*S, Term::var(x)));
            Term rhs = normalize(*T, substitute(tx, wrap));
            if (lhs != rhs) {
                rep.unit1 = {false, expand(input), expand(lhs), expand(rhs), ""};
                break;
            }
        }

        // unit 2: the law on an eta-lifted S-element is the T-unit of its class
        auto SX = enumerate(S, X, B, bounds.element_cap);
        for (const auto& sx : SX->elems) {
            Substitution wrap;
            for (const auto& x : vars(sx)) wrap[x] = pool.atom(normalize(*T, Term::var(x)));
            Term input = normalize(*S, substitute(sx, wrap));
            Term lhs = lam(input);
            Term rhs = pool.atom(sx);
            if (lhs != rhs) {
                rep.unit2 = {false, expand(input), expand(lhs), expand(rhs), ""};
                break;
            }
        }

        // naturality: all functions between carriers of size <= k
        for (int m = 1; m <= k && rep.naturality.pass; ++m) {
            for (int n = 1; n <= k && rep.naturality.pass; ++n) {
                std::vector<Term> Xm = base_vars(m), Yn = base_vars(n);
                auto TXm = enumerate(T, Xm, B, bounds.element_cap);
                auto STXm = enumerate(S, atoms_of(pool, TXm->elems), B, bounds.element_cap);
                long long fcount = 1;
                for (int i = 0; i < m; ++i) fcount *= n;
                for (long long code = 0; code < fcount && rep.naturality.pass; ++code) {
                    Substitution f;
                    long long c = code;
                    std::string fdesc;
                    for (int i = 0; i < m; ++i) {
                        f[Xm[static_cast<size_t>(i)].head()] = Yn[static_cast<size_t>(c % n)];
                        fdesc += Xm[static_cast<size_t>(i)].head() + "->" +
                                 Yn[static_cast<size_t>(c % n)].head() + " ";
                        c /= n;
                    }
                    for (const auto& e : STXm->elems) {
                        // left: rename below the law, then apply it
                        Substitution lift;
                        for (const auto& v : vars(e))
                            if (pool.is_atom(v))
                                lift[v] = pool.atom(
                                    normalize(*T, substitute(pool.value_of(v), f)));
                        Term lhs = lam(normalize(*S, substitute(e, lift)));
                        // right: apply the law, then rename above it
                        Term out = lam(e);
                        Substitution lift2;
                        for (const auto& v : vars(out))
                            if (pool.is_atom(v))
                                lift2[v] = pool.atom(
                                    normalize(*S, substitute(pool.value_of(v), f)));
                        Term rhs = normalize(*T, substitute(out, lift2));
                        if (lhs != rhs) {
                            rep.naturality = {false, expand(e), expand(lhs), expand(rhs), fdesc};
                            break;
                        }
                    }
                }
            }
        }

        // multiplication 1: flattening the S-layers before or after the law
        {
            std::vector<Term> atomsSTX = atoms_of(pool, STX->elems);
            auto SSTX = enumerate(S, atomsSTX, B, bounds.element_cap);
            Substitution flatten;
            for (size_t i = 0; i < STX->elems.size(); ++i)
                flatten[atomsSTX[i].head()] = STX->elems[i];
            for (const auto& omega : SSTX->elems) {
                Term path1 = lam(normalize(*S, substitute(omega, flatten)));
                // S(law), then the law at the S(X) component, then T(mu_S)
                Substitution inner_law;
                for (const auto& v : vars(omega))
                    if (pool.is_atom(v)) inner_law[v] = pool.atom(lam(pool.value_of(v)));
                Term mid = lam(normalize(*S, substitute(omega, inner_law)));
                Substitution flatten_s;
                for (const auto& v : vars(mid))
                    if (pool.is_atom(v)) {
                        Term q = pool.value_of(v); // S-term over S-class atoms
                        Substitution unbox;
                        for (const auto& w : vars(q))
                            if (pool.is_atom(w)) unbox[w] = pool.value_of(w);
                        flatten_s[v] = pool.atom(normalize(*S, substitute(q, unbox)));
                    }
                Term path2 = normalize(*T, substitute(mid, flatten_s));
                if (path1 != path2) {
                    rep.mult1 = {false, expand(omega), expand(path1), expand(path2), ""};
                    break;
                }
            }
        }

        // multiplication 2: flattening the T-layers before or after the law
        {
            auto TTX = enumerate(T, atomsTX, B, bounds.element_cap);
            std::vector<Term> atomsTTX = atoms_of(pool, TTX->elems);
            auto STTX = enumerate(S, atomsTTX, B, bounds.element_cap);
            Substitution flattenTX;
            for (size_t i = 0; i < TX->elems.size(); ++i)
                flattenTX[atomsTX[i].head()] = TX->elems[i];
            for (const auto& omega : STTX->elems) {
                Substitution flat;
                for (const auto& v : vars(omega))
                    if (pool.is_atom(v))
                        flat[v] = pool.atom(
                            normalize(*T, substitute(pool.value_of(v), flattenTX)));
                Term path1 = lam(normalize(*S, substitute(omega, flat)));
                // the law at the T(X) component, T(law), then mu_T at S(X)
                Term mid = lam(omega); // T-term over atoms of S(T(X))-classes
                Substitution tlaw;
                for (const auto& v : vars(mid))
                    if (pool.is_atom(v)) tlaw[v] = pool.atom(lam(pool.value_of(v)));
                Term upper = substitute(mid, tlaw); // T-term over atoms of T(S(X))-values
                Substitution unboxT;
                for (const auto& v : vars(upper))
                    if (pool.is_atom(v)) unboxT[v] = pool.value_of(v);
                Term path2 = normalize(*T, substitute(upper, unboxT));
                if (path1 != path2) {
                    rep.mult2 = {false, expand(omega), expand(path1), expand(path2), ""};
                    break;
                }
            }
        }
    } catch (const std::exception& e) {
        rep.complete = false;
        rep.cap_note = e.what();
    }
    return rep;
}

std::string render_failure(const std::string& axiom, const AxiomResult& r) {
    std::ostringstream out;
    out << axiom << " fails at " << r.instance << "\n";
    if (!r.fn.empty()) out << "  with f: " << r.fn << "\n";
    out << "    " << r.instance << " ---- path A ----> " << r.lhs << "\n";
    out << "    " << r.instance << " ---- path B ----> " << r.rhs << "\n";
    out << "    the two path values differ\n";
    return out.str();
}

} // namespace distlaw
