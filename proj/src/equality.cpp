#include "distlaw/equality.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace distlaw {

namespace {

// ---------- Boom hierarchy (one binary op, subsets of U/A/C/I) ----------

void word_of(const Term& t, const std::string& op, std::vector<Term>& out) {
    if (t.is_app() && t.head() == op && t.arity() == 2) {
        word_of(t.args()[0], op, out);
        word_of(t.args()[1], op, out);
    } else {
        out.push_back(t);
    }
}

Term rebuild_right(const std::vector<Term>& leaves, const std::string& op, const Term& empty) {
    if (leaves.empty()) return empty;
    Term acc = leaves.back();
    for (int i = static_cast<int>(leaves.size()) - 2; i >= 0; --i)
        acc = Term::app(op, {leaves[i], acc});
    return acc;
}

} // namespace

std::vector<std::string> band_canonical_word(const std::vector<std::string>& word) {
    if (word.empty()) throw std::logic_error("band word must be non-empty");
    std::vector<std::string> content;
    for (const auto& a : word)
        if (std::find(content.begin(), content.end(), a) == content.end()) content.push_back(a);
    if (content.size() == 1) return {word[0]};
    size_t k = content.size();

    // longest prefix with k-1 distinct letters, and the letter that follows it
    std::vector<std::string> seen;
    size_t cut = 0;
    for (size_t i = 0; i < word.size(); ++i) {
        if (std::find(seen.begin(), seen.end(), word[i]) == seen.end()) {
            seen.push_back(word[i]);
            if (seen.size() == k) { cut = i; break; }
        }
    }
    std::vector<std::string> prefix(word.begin(), word.begin() + cut);
    std::string sigma = word[cut];

    // dually from the right
    seen.clear();
    size_t rcut = 0;
    for (size_t i = word.size(); i-- > 0;) {
        if (std::find(seen.begin(), seen.end(), word[i]) == seen.end()) {
            seen.push_back(word[i]);
            if (seen.size() == k) { rcut = i; break; }
        }
    }
    std::vector<std::string> suffix(word.begin() + rcut + 1, word.end());
    std::string tau = word[rcut];

    std::vector<std::string> out = band_canonical_word(prefix);
    out.push_back(sigma);
    out.push_back(tau);
    auto rs = band_canonical_word(suffix);
    out.insert(out.end(), rs.begin(), rs.end());
    return out;
}

Term boom_normalize(const MagmaFlags& f, const Term& t, const std::string& op,
                    const std::string& unit) {
    Term empty = Term::constant(unit);
    std::function<Term(const Term&)> nf = [&](const Term& u) -> Term {
        if (u.is_var()) return u;
        if (u.is_const()) return u; // the unit, or an opaque generator constant
        if (u.head() != op) {       // foreign symbol: normalize below it only
            std::vector<Term> args;
            for (const auto& x : u.args()) args.push_back(nf(x));
            return Term::app(u.head(), u.param(), std::move(args));
        }
        Term a = nf(u.args()[0]);
        Term b = nf(u.args()[1]);
        if (f.unital) {
            if (a.is_const() && a.head() == unit) return b;
            if (b.is_const() && b.head() == unit) return a;
        }
        if (f.assoc) {
            std::vector<Term> w;
            word_of(a, op, w);
            word_of(b, op, w);
            if (f.idem && !f.comm) {
                // free band: recursive prefix/suffix canonical form on letters
                std::vector<std::string> letters;
                std::map<std::string, Term> back;
                for (const auto& leaf : w) {
                    std::string key = leaf.key();
                    letters.push_back(key);
                    back[key] = leaf;
                }
                auto canon = band_canonical_word(letters);
                std::vector<Term> lv;
                for (const auto& s : canon) lv.push_back(back[s]);
                return rebuild_right(lv, op, empty);
            }
            if (f.comm) std::stable_sort(w.begin(), w.end(), term_less);
            if (f.comm && f.idem) w.erase(std::unique(w.begin(), w.end()), w.end());
            return rebuild_right(w, op, empty);
        }
        if (f.idem && a == b) return a;
        if (f.comm && term_less(b, a)) std::swap(a, b);
        return Term::app(op, {a, b});
    };
    return nf(t);
}

namespace {

// ---------- Abelian groups: integer coefficient vectors ----------

void abelian_coeffs(const Term& t, int sign, std::map<Term, long long, bool (*)(const Term&, const Term&)>& acc) {
    if (t.is_const() && t.head() == sym::zero) return;
    if (t.is_app() && t.head() == sym::neg && t.arity() == 1) {
        abelian_coeffs(t.args()[0], -sign, acc);
        return;
    }
    if (t.is_app() && t.head() == sym::plus && t.arity() == 2) {
        abelian_coeffs(t.args()[0], sign, acc);
        abelian_coeffs(t.args()[1], sign, acc);
        return;
    }
    acc[t] += sign; // variable, or an opaque generator from a nested carrier
}

Term abelian_normalize(const Term& t) {
    std::map<Term, long long, bool (*)(const Term&, const Term&)> acc(term_less);
    abelian_coeffs(t, 1, acc);
    std::vector<Term> atoms;
    for (const auto& [atom, c] : acc) {
        long long n = c < 0 ? -c : c;
        for (long long i = 0; i < n; ++i)
            atoms.push_back(c > 0 ? atom : Term::app(sym::neg, {atom}));
    }
    return rebuild_right(atoms, sym::plus, Term::constant(sym::zero));
}

// ---------- Convex combinations: exact rational distributions ----------

void convex_weights(const Term& t, const Rational& w,
                    std::map<Term, Rational, bool (*)(const Term&, const Term&)>& acc) {
    if (!t.is_app() || t.head() != sym::cvx || !t.param()) {
        auto it = acc.find(t);
        if (it == acc.end()) acc.emplace(t, w);
        else it->second = it->second + w;
        return;
    }
    const Rational& p = *t.param();
    if (!p.in_open_unit_interval())
        throw std::domain_error("convex parameter " + p.str() + " outside (0,1)");
    convex_weights(t.args()[0], w * p, acc);
    convex_weights(t.args()[1], w * (Rational(1) - p), acc);
}

Term convex_normalize(const Term& t) {
    std::map<Term, Rational, bool (*)(const Term&, const Term&)> acc(term_less);
    convex_weights(t, Rational(1), acc);
    std::vector<std::pair<Term, Rational>> support(acc.begin(), acc.end());
    // right-nested with renormalised parameters
    Term out = support.back().first;
    Rational tail = support.back().second;
    for (int i = static_cast<int>(support.size()) - 2; i >= 0; --i) {
        Rational total = support[i].second + tail;
        out = Term::app(sym::cvx, support[i].second / total, {support[i].first, out});
        tail = total;
    }
    return out;
}

// ---------- Two-state reader ----------

Term reader_eval(const Term& t, int state) {
    if (!t.is_app() || t.head() != sym::binop || t.arity() != 2) return t;
    return reader_eval(t.args()[state], state);
}

Term reader_normalize(const Term& t) {
    Term a = reader_eval(t, 0);
    Term b = reader_eval(t, 1);
    if (a == b) return a;
    return Term::app(sym::binop, {a, b});
}

// ---------- Composite polynomial theories (sums of monomials) ----------

std::vector<Term> composite_eval(const Theory& th, const Term& t);

Term composite_normalize(const Theory& th, const Term& t) {
    std::vector<Term> monomials = composite_eval(th, t);
    return rebuild_right(monomials, sym::plus, Term::constant(sym::zero));
}

std::vector<Term> composite_eval(const Theory& th, const Term& t) {
    if (t.is_var() || (t.is_const() && t.head() != sym::zero && t.head() != sym::one))
        return {t};
    if (t.is_const()) {
        if (t.head() == sym::zero) return {};
        return {Term::constant(sym::one)};
    }
    if (t.head() == sym::plus) {
        auto a = composite_eval(th, t.args()[0]);
        auto b = composite_eval(th, t.args()[1]);
        a.insert(a.end(), b.begin(), b.end());
        std::stable_sort(a.begin(), a.end(), term_less);
        if (th.outer_flags.idem) a.erase(std::unique(a.begin(), a.end()), a.end());
        return a;
    }
    // product: distribute over the sums, combining monomials in the inner layer
    auto a = composite_eval(th, t.args()[0]);
    auto b = composite_eval(th, t.args()[1]);
    std::vector<Term> out;
    for (const auto& m1 : a)
        for (const auto& m2 : b)
            out.push_back(boom_normalize(th.inner_flags, Term::app(sym::times, {m1, m2}),
                                         sym::times, sym::one));
    std::stable_sort(out.begin(), out.end(), term_less);
    if (th.outer_flags.idem) out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

bool has_normal_forms(const Theory& th) {
    return th.backend != BackendKind::Generic;
}

Term normalize(const Theory& th, const Term& t) {
    switch (th.backend) {
        case BackendKind::Boom:
            return boom_normalize(th.flags, t, sym::binop, sym::unit);
        case BackendKind::AbelianGroup:
            return abelian_normalize(t);
        case BackendKind::Convex:
            return convex_normalize(t);
        case BackendKind::Reader2:
            return reader_normalize(t);
        case BackendKind::BoundedLattice:
            return lattice_normalize(t);
        case BackendKind::Exceptions:
            return t;
        case BackendKind::Composite:
            return composite_normalize(th, t);
        case BackendKind::Generic:
            throw std::runtime_error("theory '" + th.name() + "' has no canonical-form oracle");
    }
    throw std::logic_error("unreachable");
}

EqVerdict decide_equal(const Theory& th, const Term& a, const Term& b) {
    return decide_equal(th, a, b, ProveBudget{10, 4000}, 2);
}

EqVerdict decide_equal(const Theory& th, const Term& a, const Term& b, ProveBudget budget,
                       int countermodel_size) {
    EqVerdict v;
    if (has_normal_forms(th)) {
        v.nf1 = normalize(th, a);
        v.nf2 = normalize(th, b);
        v.verdict = (*v.nf1 == *v.nf2) ? Eq::Equal : Eq::Distinct;
        return v;
    }
    EqVerdict proved = bounded_prove(th, a, b, budget);
    if (proved.equal()) return proved;
    if (auto m = find_countermodel(th, a, b, countermodel_size)) {
        v.verdict = Eq::Distinct;
        v.model = *m;
        return v;
    }
    v.verdict = Eq::Unknown;
    v.report = proved.report + "; no countermodel with carrier <= " +
               std::to_string(countermodel_size);
    return v;
}

} // namespace distlaw
