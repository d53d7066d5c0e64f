#ifndef DISTLAW_TERM_HPP
#define DISTLAW_TERM_HPP

#include "distlaw/rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace distlaw {

// First-order terms over a signature: variables and operator applications.
// Immutable with structural sharing; all mutating-looking operations return
// fresh terms. A symbol may carry an exact rational parameter (the convex
// combination family +@{p} needs one); symbol identity is (name, parameter).
class Term {
public:
    Term() = default;

    static Term var(std::string name);
    static Term app(std::string op, std::vector<Term> args);
    static Term app(std::string op, std::optional<Rational> param, std::vector<Term> args);
    static Term constant(std::string op) { return app(std::move(op), {}); }

    bool valid() const { return node_ != nullptr; }
    bool is_var() const { return node_->is_var; }
    bool is_app() const { return !node_->is_var; }
    bool is_const() const { return !node_->is_var && node_->args.empty(); }

    // variable name or operation name
    const std::string& head() const { return node_->head; }
    const std::optional<Rational>& param() const { return node_->param; }
    const std::vector<Term>& args() const { return node_->args; }
    int arity() const { return static_cast<int>(node_->args.size()); }

    int leaf_count() const { return node_->leaves; }
    int node_count() const { return node_->nodes; }

    bool operator==(const Term& o) const;
    bool operator!=(const Term& o) const { return !(*this == o); }

    std::string str() const;   // canonical prefix text
    std::string key() const;   // like str() but unambiguous: constants render as "name()"

private:
    struct Node {
        bool is_var;
        std::string head;
        std::optional<Rational> param;
        std::vector<Term> args;
        int leaves;
        int nodes;
    };
    std::shared_ptr<const Node> node_;

    explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
};

// Lexicographic order on (kind, head, parameter, children); variables sort
// before applications. Total, used wherever determinism is required.
int term_compare(const Term& a, const Term& b);
inline bool term_less(const Term& a, const Term& b) { return term_compare(a, b) < 0; }

using Substitution = std::map<std::string, Term>;

// Variable names in first-occurrence order, without duplicates.
std::vector<std::string> vars(const Term& t);
bool has_var(const Term& t, const std::string& name);

// Simultaneous capture-free substitution; unmapped variables stay fixed.
Term substitute(const Term& t, const Substitution& s);

// f;g — apply f, then g (including on variables untouched by f).
Substitution compose(const Substitution& f, const Substitution& g);

struct OperationInfo {
    int arity = 0;
    bool param_family = false;  // family of symbols indexed by a rational
    bool operator==(const OperationInfo&) const = default;
};

struct Signature {
    std::map<std::string, OperationInfo> ops;

    bool declares(const std::string& name) const { return ops.count(name) != 0; }
    void add(const std::string& name, int arity, bool param_family = false) {
        ops[name] = OperationInfo{arity, param_family};
    }
    std::vector<std::string> constants() const;
};

struct Diagnostic {
    bool ok = true;
    std::string message;  // names the offending subterm path when !ok
    explicit operator bool() const { return ok; }
};

// Checks every symbol is declared with matching arity.
Diagnostic validate(const Term& t, const Signature& sig);

struct Equation {
    std::string name;
    Term lhs, rhs;
};

} // namespace distlaw

#endif
