#include "distlaw/equality.hpp"

#include <algorithm>
#include <stdexcept>

// Word problem for free bounded lattices. Constants are eliminated first
// (a meet or join with top/bottom always simplifies), leaving either a bare
// constant or a pure lattice term. Pure terms are compared with Whitman's
// condition and put into the canonical form of Freese, Jezek and Nation:
// components of a join are canonical non-joins, pairwise incomparable, no
// component is below the join of the others, and no meet-component keeps a
// meetand that already lies below the whole join (such a component collapses
// to that meetand). Dually for meets.

namespace distlaw {

namespace {

bool is_join(const Term& t) { return t.is_app() && t.head() == sym::join && t.arity() == 2; }
bool is_meet(const Term& t) { return t.is_app() && t.head() == sym::meet && t.arity() == 2; }
bool is_top(const Term& t) { return t.is_const() && t.head() == sym::top; }
bool is_bot(const Term& t) { return t.is_const() && t.head() == sym::bot; }

void components(const Term& t, bool join, std::vector<Term>& out) {
    if ((join && is_join(t)) || (!join && is_meet(t))) {
        components(t.args()[0], join, out);
        components(t.args()[1], join, out);
    } else {
        out.push_back(t);
    }
}

Term assemble(std::vector<Term> parts, bool join) {
    std::stable_sort(parts.begin(), parts.end(), term_less);
    parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
    Term acc = parts.back();
    for (int i = static_cast<int>(parts.size()) - 2; i >= 0; --i)
        acc = Term::app(join ? sym::join : sym::meet, {parts[i], acc});
    return acc;
}

Term eliminate_constants(const Term& t) {
    if (t.is_var() || t.is_const()) return t;
    Term a = eliminate_constants(t.args()[0]);
    Term b = eliminate_constants(t.args()[1]);
    if (t.head() == sym::join) {
        if (is_top(a) || is_top(b)) return Term::constant(sym::top);
        if (is_bot(a)) return b;
        if (is_bot(b)) return a;
        return Term::app(sym::join, {a, b});
    }
    if (is_bot(a) || is_bot(b)) return Term::constant(sym::bot);
    if (is_top(a)) return b;
    if (is_top(b)) return a;
    return Term::app(sym::meet, {a, b});
}

// Generators may be variables or opaque constants from a nested free algebra.
bool is_atom(const Term& t) { return t.is_var() || (t.is_const() && !is_top(t) && !is_bot(t)); }

// Whitman's test on constant-free terms.
bool leq(const Term& a, const Term& b) {
    if (is_join(a)) return leq(a.args()[0], b) && leq(a.args()[1], b);
    if (is_meet(b)) return leq(a, b.args()[0]) && leq(a, b.args()[1]);
    if (is_atom(a) && is_atom(b)) return a == b;
    if (is_atom(a)) { // b is a join
        return leq(a, b.args()[0]) || leq(a, b.args()[1]);
    }
    if (is_atom(b)) { // a is a meet
        return leq(a.args()[0], b) || leq(a.args()[1], b);
    }
    // a meet below a join: Whitman's condition (W)
    return leq(a.args()[0], b) || leq(a.args()[1], b) || leq(a, b.args()[0]) ||
           leq(a, b.args()[1]);
}

Term canon(const Term& t);

Term canon_node(const Term& t, bool join) {
    std::vector<Term> parts;
    components(t, join, parts);
    for (auto& p : parts) p = canon(p);

    bool changed = true;
    while (changed) {
        changed = false;
        // re-flatten (a component may have collapsed into this node's kind)
        std::vector<Term> flat;
        for (const auto& p : parts) components(p, join, flat);
        parts = flat;

        // drop any component below/above the rest
        for (size_t i = 0; i < parts.size() && parts.size() > 1; ++i) {
            std::vector<Term> rest;
            for (size_t j = 0; j < parts.size(); ++j)
                if (j != i) rest.push_back(parts[j]);
            Term rest_term = assemble(rest, join);
            bool redundant = join ? leq(parts[i], rest_term) : leq(rest_term, parts[i]);
            if (redundant) {
                parts.erase(parts.begin() + static_cast<long>(i));
                changed = true;
                break;
            }
        }
        if (changed) continue;
        if (parts.size() == 1) break;

        // a meet-component with a meetand below the whole join collapses to
        // that meetand (w = a v (u ^ v) with u <= w equals a v u); dually
        Term whole = assemble(parts, join);
        for (size_t i = 0; i < parts.size(); ++i) {
            const Term& p = parts[i];
            bool inner_meet = join ? is_meet(p) : is_join(p);
            if (!inner_meet) continue;
            std::vector<Term> inner;
            components(p, !join, inner);
            for (const auto& w : inner) {
                bool collapses = join ? leq(w, whole) : leq(whole, w);
                if (collapses) {
                    parts[i] = w;
                    changed = true;
                    break;
                }
            }
            if (changed) break;
        }
    }
    if (parts.size() == 1) return parts[0];
    return assemble(parts, join);
}

Term canon(const Term& t) {
    if (t.is_var() || t.is_const()) return t;
    return canon_node(t, is_join(t));
}

} // namespace

bool lattice_leq(const Term& a, const Term& b) { return leq(a, b); }

Term lattice_normalize(const Term& t) {
    Term u = eliminate_constants(t);
    if (u.is_const()) return u;
    return canon(u);
}

} // namespace distlaw
