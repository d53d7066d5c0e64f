#include "distlaw/freealg.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace distlaw {

int FreeAlgebra::index_of(const Term& canonical) const {
    auto it = std::lower_bound(elems.begin(), elems.end(), canonical,
                               [](const Term& a, const Term& b) { return term_less(a, b); });
    if (it != elems.end() && *it == canonical) return static_cast<int>(it - elems.begin());
    return -1;
}

namespace {

std::vector<Rational> params_for(const Theory& th) {
    if (!th.enum_params.empty()) return th.enum_params;
    return {Rational(1, 2)};
}

// raw terms indexed by leaf count; a term with L leaves has L-1 binary nodes,
// plus at most one unary wrap per build step (enough to reach every class at
// the bound for the stock oracles)
std::vector<std::vector<Term>> raw_terms(const Theory& th, const std::vector<Term>& gens,
                                         int bound) {
    std::vector<std::vector<Term>> by_leaves(static_cast<size_t>(bound) + 1);
    auto add_with_unaries = [&](int leaves, const Term& t) {
        by_leaves[static_cast<size_t>(leaves)].push_back(t);
        for (const auto& [op, info] : th.sig().ops)
            if (info.arity == 1)
                by_leaves[static_cast<size_t>(leaves)].push_back(Term::app(op, {t}));
    };
    if (bound >= 1) {
        for (const auto& g : gens) add_with_unaries(1, g);
        for (const auto& c : th.sig().constants()) add_with_unaries(1, Term::constant(c));
    }
    for (int leaves = 2; leaves <= bound; ++leaves) {
        for (const auto& [op, info] : th.sig().ops) {
            if (info.arity != 2) continue;
            std::vector<Rational> params =
                info.param_family ? params_for(th) : std::vector<Rational>{};
            for (int i = 1; i < leaves; ++i) {
                for (const auto& a : by_leaves[static_cast<size_t>(i)]) {
                    for (const auto& b : by_leaves[static_cast<size_t>(leaves - i)]) {
                        if (info.param_family) {
                            for (const auto& p : params)
                                add_with_unaries(leaves, Term::app(op, p, {a, b}));
                        } else {
                            add_with_unaries(leaves, Term::app(op, {a, b}));
                        }
                    }
                }
            }
        }
    }
    return by_leaves;
}

struct CacheKey {
    std::string key;
    bool operator<(const CacheKey& o) const { return key < o.key; }
};

std::map<std::string, std::shared_ptr<const FreeAlgebra>>& cache() {
    static std::map<std::string, std::shared_ptr<const FreeAlgebra>> c;
    return c;
}
std::mutex& cache_mutex() {
    static std::mutex m;
    return m;
}

} // namespace

std::shared_ptr<const FreeAlgebra> enumerate(TheoryPtr th, const std::vector<Term>& gens,
                                             int bound, long long element_cap) {
    std::ostringstream key;
    key << th->name() << "|" << bound << "|";
    for (const auto& g : gens) key << g.key() << ",";
    {
        std::lock_guard<std::mutex> lock(cache_mutex());
        auto it = cache().find(key.str());
        if (it != cache().end()) return it->second;
    }

    auto alg = std::make_shared<FreeAlgebra>();
    alg->theory = th;
    alg->gens = gens;
    alg->bound = bound;

    auto by_leaves = raw_terms(*th, gens, bound);
    std::set<std::string> seen;
    std::vector<Term> elems;
    for (const auto& bucket : by_leaves) {
        for (const auto& t : bucket) {
            Term canon = normalize(*th, t);
            if (seen.insert(canon.key()).second) elems.push_back(canon);
            if (static_cast<long long>(elems.size()) > element_cap)
                throw std::runtime_error("free-algebra carrier exceeds the element cap of " +
                                         std::to_string(element_cap));
        }
    }
    std::sort(elems.begin(), elems.end(), term_less);
    alg->elems = std::move(elems);

    std::lock_guard<std::mutex> lock(cache_mutex());
    auto [it, inserted] = cache().emplace(key.str(), alg);
    return it->second;
}

Term unit_elem(const Theory& th, const Term& gen) {
    return normalize(th, gen);
}

Term fmap_elem(const Theory& th, const Substitution& rename, const Term& elem) {
    return normalize(th, substitute(elem, rename));
}

Term mult_elem(const Theory& th, const Substitution& binding, const Term& outer) {
    return normalize(th, substitute(outer, binding));
}

MonadLawReport check_monad_laws(
    TheoryPtr th, const std::vector<Term>& gens, int bound,
    const std::function<Term(const Theory&, const Substitution&, const Term&)>& mult_override,
    int nested_gen_cap) {
    auto mult = mult_override ? mult_override : mult_elem;
    MonadLawReport rep;

    auto c1 = enumerate(th, gens, bound);

    // layered generators: g<i> names the i-th class of the carrier below
    auto layer_gens = [&](const FreeAlgebra& alg) {
        std::vector<Term> names;
        size_t n = std::min(alg.elems.size(), static_cast<size_t>(nested_gen_cap));
        for (size_t i = 0; i < n; ++i) names.push_back(Term::var("g" + std::to_string(i)));
        return names;
    };
    auto layer_binding = [&](const FreeAlgebra& alg) {
        Substitution b;
        size_t n = std::min(alg.elems.size(), static_cast<size_t>(nested_gen_cap));
        for (size_t i = 0; i < n; ++i) b["g" + std::to_string(i)] = alg.elems[i];
        return b;
    };

    // unit laws on every element of the carrier
    for (const auto& e : c1->elems) {
        // mult(fmap(unit)(e)) == e: wrap every generator in its unit class
        Substitution wrap;
        Substitution binding;
        for (size_t i = 0; i < c1->gens.size(); ++i) {
            std::string gname = "g" + std::to_string(i);
            wrap[c1->gens[i].head()] = Term::var(gname);
            binding[gname] = unit_elem(*th, c1->gens[i]);
        }
        Term lifted = substitute(e, wrap); // plain relabelling, no normalization needed
        if (mult(*th, binding, lifted) != e) {
            rep.ok = false;
            rep.law = "unit (mult of unit-wrapped generators)";
            rep.witness = e.str();
            return rep;
        }
        // mult(unit_{T X}(e)) == e
        Substitution single{{"g", e}};
        if (mult(*th, single, Term::var("g")) != e) {
            rep.ok = false;
            rep.law = "unit (mult of the singleton over the element)";
            rep.witness = e.str();
            return rep;
        }
    }

    // associativity on the doubly nested carrier
    auto g1 = layer_gens(*c1);
    auto c2 = enumerate(th, g1, bound);
    auto g2 = layer_gens(*c2);
    auto c3 = enumerate(th, g2, bound);
    Substitution bind1 = layer_binding(*c1);
    Substitution bind2 = layer_binding(*c2);

    size_t c2n = std::min(c2->elems.size(), static_cast<size_t>(nested_gen_cap));
    for (const auto& omega : c3->elems) {
        // flatten the two inner layers first
        Substitution inner_flat;
        for (size_t j = 0; j < c2n; ++j)
            inner_flat["g" + std::to_string(j)] = mult(*th, bind1, c2->elems[j]);
        Term path1 = mult(*th, inner_flat, omega);
        // flatten the two outer layers first
        Term outer_flat = mult(*th, bind2, omega);
        Term path2 = mult(*th, bind1, outer_flat);
        if (path1 != path2) {
            rep.ok = false;
            rep.law = "associativity";
            rep.witness = omega.str() + " -> " + path1.str() + " vs " + path2.str();
            return rep;
        }
    }
    return rep;
}

// ---------- mixed terms and separation ----------

namespace {
const std::string s_prefix = "s:";
const std::string t_prefix = "t:";

bool has_prefix(const std::string& h, const std::string& p) { return h.rfind(p, 0) == 0; }
} // namespace

Term qualify(const Term& t, const Theory& S, const Theory& T) {
    if (t.is_var()) return t;
    std::vector<Term> args;
    for (const auto& a : t.args()) args.push_back(qualify(a, S, T));
    if (has_prefix(t.head(), s_prefix) || has_prefix(t.head(), t_prefix))
        return Term::app(t.head(), t.param(), std::move(args));
    bool in_s = S.sig().declares(t.head());
    bool in_t = T.sig().declares(t.head());
    if (in_s && in_t)
        throw std::invalid_argument("symbol '" + t.head() +
                                    "' is declared by both theories; qualify it with s: or t:");
    if (!in_s && !in_t) throw std::invalid_argument("symbol '" + t.head() + "' is undeclared");
    return Term::app((in_s ? s_prefix : t_prefix) + t.head(), t.param(), std::move(args));
}

Term unqualify(const Term& t) {
    if (t.is_var()) return t;
    std::vector<Term> args;
    for (const auto& a : t.args()) args.push_back(unqualify(a));
    std::string h = t.head();
    if (has_prefix(h, s_prefix) || has_prefix(h, t_prefix)) h = h.substr(2);
    return Term::app(h, t.param(), std::move(args));
}

std::vector<RewriteRule> times_over_plus_rules(const Theory& S, const Theory& T) {
    std::vector<RewriteRule> rules;
    std::vector<std::pair<std::string, int>> sops;
    for (const auto& [op, info] : S.sig().ops)
        if (info.arity >= 1) sops.push_back({op, info.arity});

    auto svar = [](int i) { return Term::var("u" + std::to_string(i)); };

    for (const auto& [sop, arity] : sops) {
        for (int pos = 0; pos < arity; ++pos) {
            auto frame = [&](const Term& filler) {
                std::vector<Term> args;
                for (int i = 0; i < arity; ++i)
                    args.push_back(i == pos ? filler : svar(i));
                return Term::app(s_prefix + sop, args);
            };
            for (const auto& [top, tinfo] : T.sig().ops) {
                if (tinfo.arity == 2) {
                    Term y = Term::var("y"), z = Term::var("z");
                    Term lhs = frame(Term::app(t_prefix + top, {y, z}));
                    Term rhs = Term::app(t_prefix + top, {frame(y), frame(z)});
                    rules.push_back({"dist_" + sop + "_" + std::to_string(pos) + "_" + top, lhs, rhs});
                } else if (tinfo.arity == 0) {
                    Term c = Term::constant(t_prefix + top);
                    rules.push_back({"absorb_" + sop + "_" + std::to_string(pos) + "_" + top,
                                     frame(c), c});
                }
            }
        }
    }
    return rules;
}

namespace {

bool match_rule(const Term& pattern, const Term& t, Substitution& binding) {
    if (pattern.is_var()) {
        auto it = binding.find(pattern.head());
        if (it == binding.end()) {
            binding[pattern.head()] = t;
            return true;
        }
        return it->second == t;
    }
    if (t.is_var() || pattern.head() != t.head() || pattern.arity() != t.arity()) return false;
    for (int i = 0; i < pattern.arity(); ++i)
        if (!match_rule(pattern.args()[i], t.args()[i], binding)) return false;
    return true;
}

Term rewrite_once(const Term& t, const std::vector<RewriteRule>& rules, bool& changed,
                  long long& steps, long long max_steps) {
    if (t.is_var()) return t;
    std::vector<Term> args;
    for (const auto& a : t.args()) args.push_back(rewrite_once(a, rules, changed, steps, max_steps));
    Term cur = args.empty() ? t : Term::app(t.head(), t.param(), std::move(args));
    bool local = true;
    while (local) {
        local = false;
        for (const auto& r : rules) {
            Substitution binding;
            if (match_rule(r.lhs, cur, binding)) {
                cur = substitute(r.rhs, binding);
                if (++steps > max_steps)
                    throw std::runtime_error("rewrite budget exceeded (" +
                                             std::to_string(max_steps) + " steps)");
                changed = true;
                local = true;
                // children of the replacement may expose fresh redexes
                bool sub = false;
                std::vector<Term> rebuilt;
                for (const auto& a : cur.args())
                    rebuilt.push_back(rewrite_once(a, rules, sub, steps, max_steps));
                if (sub) changed = true;
                if (!cur.args().empty()) cur = Term::app(cur.head(), cur.param(), std::move(rebuilt));
                break;
            }
        }
    }
    return cur;
}

} // namespace

Term rewrite_innermost(const Term& t, const std::vector<RewriteRule>& rules, long long max_steps) {
    Term cur = t;
    long long steps = 0;
    while (true) {
        bool changed = false;
        cur = rewrite_once(cur, rules, changed, steps, max_steps);
        if (!changed) return cur;
    }
}

SeparatedTerm separate(const Theory& S, const Theory& T, const std::vector<RewriteRule>& rules,
                       const Term& mixed, long long max_steps) {
    Term rewritten = rewrite_innermost(mixed, rules, max_steps);

    SeparatedTerm sep;
    int counter = 0;
    std::map<std::string, std::string> dedup; // inner term text -> index name
    std::function<Term(const Term&)> peel = [&](const Term& u) -> Term {
        bool t_layer = u.is_app() && has_prefix(u.head(), t_prefix);
        if (t_layer) {
            std::vector<Term> args;
            for (const auto& a : u.args()) args.push_back(peel(a));
            return Term::app(u.head().substr(2), u.param(), std::move(args));
        }
        // inner S-term (or a bare variable); check it is pure
        std::function<void(const Term&)> check = [&](const Term& w) {
            if (w.is_app() && has_prefix(w.head(), t_prefix))
                throw std::runtime_error("separation left the T-symbol '" + w.head().substr(2) +
                                         "' under an S-symbol: " + unqualify(rewritten).str());
            for (const auto& a : w.args()) check(a);
        };
        check(u);
        Term inner = unqualify(u);
        std::string key = inner.key();
        auto it = dedup.find(key);
        if (it != dedup.end()) return Term::var(it->second);
        std::string name = "k" + std::to_string(counter++);
        dedup[key] = name;
        sep.family.push_back({name, inner});
        return Term::var(name);
    };
    sep.outer = peel(rewritten);
    return normalize_separated(S, T, sep);
}

SeparatedTerm normalize_separated(const Theory& S, const Theory& T, const SeparatedTerm& u) {
    SeparatedTerm out;
    // normalize the inner layer and merge indices whose classes coincide
    std::map<std::string, std::string> rename;
    std::map<std::string, std::string> class_to_name;
    int counter = 0;
    for (const auto& [name, inner] : u.family) {
        Term canon = has_normal_forms(S) ? normalize(S, inner) : inner;
        std::string key = canon.key();
        auto it = class_to_name.find(key);
        if (it == class_to_name.end()) {
            std::string fresh = "k" + std::to_string(counter++);
            class_to_name[key] = fresh;
            out.family.push_back({fresh, canon});
            rename[name] = fresh;
        } else {
            rename[name] = it->second;
        }
    }
    Substitution subst;
    for (const auto& [from, to] : rename) subst[from] = Term::var(to);
    Term outer = substitute(u.outer, subst);
    out.outer = has_normal_forms(T) ? normalize(T, outer) : outer;
    // drop family entries whose index no longer occurs in the outer term
    std::vector<std::pair<std::string, Term>> used;
    for (const auto& [name, inner] : out.family)
        if (has_var(out.outer, name)) used.push_back({name, inner});
    out.family = std::move(used);
    return out;
}

ModuloResult equal_modulo(const Theory& S, const Theory& T, const SeparatedTerm& u,
                          const SeparatedTerm& v) {
    ModuloResult res;
    // group all inner terms into S-classes
    std::vector<Term> reps;
    auto class_of = [&](const Term& inner) -> int {
        for (size_t i = 0; i < reps.size(); ++i) {
            EqVerdict eq = decide_equal(S, reps[i], inner);
            if (eq.verdict == Eq::Unknown) return -1;
            if (eq.equal()) return static_cast<int>(i);
        }
        reps.push_back(inner);
        return static_cast<int>(reps.size()) - 1;
    };
    for (const auto& [name, inner] : u.family) {
        int c = class_of(inner);
        if (c < 0) {
            res.note = "inner S-equality undecided for " + inner.str();
            return res;
        }
        res.g1[name] = c;
    }
    for (const auto& [name, inner] : v.family) {
        int c = class_of(inner);
        if (c < 0) {
            res.note = "inner S-equality undecided for " + inner.str();
            return res;
        }
        res.g2[name] = c;
    }
    auto relabel = [](const SeparatedTerm& w, const std::map<std::string, int>& g) {
        Substitution subst;
        for (const auto& [name, cls] : g) subst[name] = Term::var("z" + std::to_string(cls));
        return substitute(w.outer, subst);
    };
    EqVerdict eq = decide_equal(T, relabel(u, res.g1), relabel(v, res.g2));
    res.verdict = eq.verdict;
    if (eq.verdict == Eq::Unknown) res.note = "outer T-equality undecided";
    return res;
}

std::optional<bool> equal_modulo_bruteforce(const Theory& S, const Theory& T,
                                            const SeparatedTerm& u, const SeparatedTerm& v) {
    // all relabelling pairs g1: X -> Z, g2: X' -> Z with |Z| = |X| + |X'|,
    // subject to: g-values agree exactly when the inner S-terms are equal
    size_t nu = u.family.size(), nv = v.family.size();
    size_t z = nu + nv;
    if (z == 0) {
        EqVerdict eq = decide_equal(T, u.outer, v.outer);
        if (eq.verdict == Eq::Unknown) return std::nullopt;
        return eq.equal();
    }
    // inner equality matrix first (any Unknown poisons the search)
    auto inner_eq = [&](const Term& a, const Term& b) -> std::optional<bool> {
        EqVerdict eq = decide_equal(S, a, b);
        if (eq.verdict == Eq::Unknown) return std::nullopt;
        return eq.equal();
    };
    std::vector<Term> all;
    for (const auto& [n, t] : u.family) all.push_back(t);
    for (const auto& [n, t] : v.family) all.push_back(t);
    std::vector<std::vector<bool>> eqm(all.size(), std::vector<bool>(all.size()));
    for (size_t i = 0; i < all.size(); ++i)
        for (size_t j = 0; j < all.size(); ++j) {
            auto e = inner_eq(all[i], all[j]);
            if (!e) return std::nullopt;
            eqm[i][j] = *e;
        }

    std::vector<int> labels(all.size(), 0);
    std::function<std::optional<bool>(size_t)> assign = [&](size_t k) -> std::optional<bool> {
        if (k == all.size()) {
            Substitution s1, s2;
            for (size_t i = 0; i < nu; ++i)
                s1[u.family[i].first] = Term::var("z" + std::to_string(labels[i]));
            for (size_t i = 0; i < nv; ++i)
                s2[v.family[i].first] = Term::var("z" + std::to_string(labels[nu + i]));
            EqVerdict eq = decide_equal(T, substitute(u.outer, s1), substitute(v.outer, s2));
            if (eq.verdict == Eq::Unknown) return std::nullopt;
            return eq.equal();
        }
        bool sawUnknown = false;
        for (int val = 0; val < static_cast<int>(z); ++val) {
            labels[k] = val;
            // labels must agree exactly when the inner terms are S-equal
            bool consistent = true;
            for (size_t i = 0; i < k && consistent; ++i)
                if ((labels[i] == val) != eqm[i][k]) consistent = false;
            if (!consistent) continue;
            auto r = assign(k + 1);
            if (!r) sawUnknown = true;
            else if (*r) return true;
        }
        if (sawUnknown) return std::nullopt;
        return false;
    };
    return assign(0);
}

} // namespace distlaw
