#include "distlaw/term.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace distlaw {

Term Term::var(std::string name) {
    auto n = std::make_shared<Node>();
    n->is_var = true;
    n->head = std::move(name);
    n->leaves = 1;
    n->nodes = 1;
    return Term(std::move(n));
}

Term Term::app(std::string op, std::vector<Term> args) {
    return app(std::move(op), std::nullopt, std::move(args));
}

Term Term::app(std::string op, std::optional<Rational> param, std::vector<Term> args) {
    auto n = std::make_shared<Node>();
    n->is_var = false;
    n->head = std::move(op);
    n->param = std::move(param);
    n->leaves = args.empty() ? 1 : 0;
    n->nodes = 1;
    for (const auto& a : args) {
        n->leaves += a.leaf_count();
        n->nodes += a.node_count();
    }
    n->args = std::move(args);
    return Term(std::move(n));
}

bool Term::operator==(const Term& o) const {
    if (node_ == o.node_) return true;
    return term_compare(*this, o) == 0;
}

int term_compare(const Term& a, const Term& b) {
    if (a.is_var() != b.is_var()) return a.is_var() ? -1 : 1;
    if (int c = a.head().compare(b.head()); c != 0) return c < 0 ? -1 : 1;
    if (!a.is_var()) {
        bool ha = a.param().has_value(), hb = b.param().has_value();
        if (ha != hb) return ha ? 1 : -1;
        if (ha) {
            if (*a.param() < *b.param()) return -1;
            if (*b.param() < *a.param()) return 1;
        }
        if (a.arity() != b.arity()) return a.arity() < b.arity() ? -1 : 1;
        for (int i = 0; i < a.arity(); ++i)
            if (int c = term_compare(a.args()[i], b.args()[i]); c != 0) return c;
    }
    return 0;
}

namespace {
void render(const Term& t, std::ostringstream& out, bool tag_constants) {
    if (t.is_var()) {
        out << t.head();
        return;
    }
    out << t.head();
    if (t.param()) out << "@{" << t.param()->str() << "}";
    if (!t.args().empty() || tag_constants) {
        out << "(";
        for (size_t i = 0; i < t.args().size(); ++i) {
            if (i) out << ",";
            render(t.args()[i], out, tag_constants);
        }
        out << ")";
    }
}
} // namespace

std::string Term::str() const {
    std::ostringstream out;
    render(*this, out, false);
    return out.str();
}

std::string Term::key() const {
    std::ostringstream out;
    render(*this, out, true);
    return out.str();
}

namespace {
void collect_vars(const Term& t, std::vector<std::string>& out, std::set<std::string>& seen) {
    if (t.is_var()) {
        if (seen.insert(t.head()).second) out.push_back(t.head());
        return;
    }
    for (const auto& a : t.args()) collect_vars(a, out, seen);
}
} // namespace

std::vector<std::string> vars(const Term& t) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    collect_vars(t, out, seen);
    return out;
}

bool has_var(const Term& t, const std::string& name) {
    if (t.is_var()) return t.head() == name;
    for (const auto& a : t.args())
        if (has_var(a, name)) return true;
    return false;
}

Term substitute(const Term& t, const Substitution& s) {
    if (t.is_var()) {
        auto it = s.find(t.head());
        return it == s.end() ? t : it->second;
    }
    if (t.args().empty()) return t;
    std::vector<Term> args;
    args.reserve(t.args().size());
    bool changed = false;
    for (const auto& a : t.args()) {
        args.push_back(substitute(a, s));
        if (args.back() != a) changed = true;
    }
    if (!changed) return t;
    return Term::app(t.head(), t.param(), std::move(args));
}

Substitution compose(const Substitution& f, const Substitution& g) {
    Substitution out;
    for (const auto& [x, tx] : f) out[x] = substitute(tx, g);
    for (const auto& [y, ty] : g)
        if (!out.count(y) && !f.count(y)) out[y] = ty;
    return out;
}

std::vector<std::string> Signature::constants() const {
    std::vector<std::string> out;
    for (const auto& [name, info] : ops)
        if (info.arity == 0) out.push_back(name);
    return out;
}

namespace {
Diagnostic validate_at(const Term& t, const Signature& sig, const std::string& path) {
    if (t.is_var()) return {};
    auto it = sig.ops.find(t.head());
    if (it == sig.ops.end())
        return {false, "unknown symbol '" + t.head() + "' at " + path};
    if (it->second.arity != t.arity())
        return {false, "arity mismatch for '" + t.head() + "' at " + path + ": declared " +
                           std::to_string(it->second.arity) + ", got " + std::to_string(t.arity())};
    if (t.param() && !it->second.param_family)
        return {false, "symbol '" + t.head() + "' at " + path + " takes no parameter"};
    if (!t.param() && it->second.param_family)
        return {false, "symbol '" + t.head() + "' at " + path + " requires a parameter"};
    for (int i = 0; i < t.arity(); ++i) {
        auto d = validate_at(t.args()[i], sig, path + "." + std::to_string(i + 1));
        if (!d.ok) return d;
    }
    return {};
}
} // namespace

Diagnostic validate(const Term& t, const Signature& sig) {
    return validate_at(t, sig, "root");
}

} // namespace distlaw
