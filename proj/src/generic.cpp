#include "distlaw/equality.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <unordered_map>

namespace distlaw {

namespace {

bool match(const Term& pattern, const Term& t, Substitution& binding) {
    if (pattern.is_var()) {
        auto it = binding.find(pattern.head());
        if (it == binding.end()) {
            binding[pattern.head()] = t;
            return true;
        }
        return it->second == t;
    }
    if (t.is_var() || pattern.head() != t.head() || pattern.arity() != t.arity()) return false;
    if (pattern.param().has_value() != t.param().has_value()) return false;
    if (pattern.param() && !(*pattern.param() == *t.param())) return false;
    for (int i = 0; i < pattern.arity(); ++i)
        if (!match(pattern.args()[i], t.args()[i], binding)) return false;
    return true;
}

Term replace_at(const Term& t, const std::vector<int>& path, size_t depth, const Term& repl) {
    if (depth == path.size()) return repl;
    std::vector<Term> args = t.args();
    int i = path[depth] - 1;
    args[static_cast<size_t>(i)] = replace_at(args[static_cast<size_t>(i)], path, depth + 1, repl);
    return Term::app(t.head(), t.param(), std::move(args));
}

struct Candidate {
    Term result;
    ProofStep step;
};

// one-step rewrites of the whole term under a single oriented axiom at a
// single position; extra right-hand variables are instantiated from `fresh`
void axiom_rewrites(const Term& whole, const Term& at, std::vector<int>& path,
                    const Equation& eq, bool forward, const std::vector<Term>& fresh,
                    int max_nodes, std::vector<Candidate>& out) {
    const Term& from = forward ? eq.lhs : eq.rhs;
    const Term& to = forward ? eq.rhs : eq.lhs;
    Substitution binding;
    if (match(from, at, binding)) {
        std::vector<std::string> missing;
        for (const auto& v : vars(to))
            if (!binding.count(v)) missing.push_back(v);
        std::function<void(size_t)> instantiate = [&](size_t k) {
            if (k == missing.size()) {
                Term replaced = substitute(to, binding);
                Term result = replace_at(whole, path, 0, replaced);
                if (result.node_count() <= max_nodes)
                    out.push_back({result, {eq.name, path, binding, forward, result}});
                return;
            }
            for (const auto& f : fresh) {
                binding[missing[k]] = f;
                instantiate(k + 1);
            }
            binding.erase(missing[k]);
        };
        if (missing.empty() || !fresh.empty()) instantiate(0);
    }
}

void convex_rewrites(const Theory& th, const Term& whole, const Term& at, std::vector<int>& path,
                     int max_nodes, std::vector<Candidate>& out) {
    auto emit = [&](const Term& to, const std::string& axiom, bool forward) {
        Term result = replace_at(whole, path, 0, to);
        if (result.node_count() <= max_nodes)
            out.push_back({result, {axiom, path, {}, forward, result}});
    };
    // reverse idempotence applies anywhere
    for (const auto& p : th.enum_params)
        emit(Term::app(sym::cvx, p, {at, at}), "idem", false);
    if (!at.is_app() || at.head() != sym::cvx || !at.param()) return;
    const Rational p = *at.param();
    const Term& a = at.args()[0];
    const Term& b = at.args()[1];
    if (a == b) emit(a, "idem", true);
    emit(Term::app(sym::cvx, Rational(1) - p, {b, a}), "comm", true);
    if (b.is_app() && b.head() == sym::cvx && b.param()) {
        const Rational r = *b.param();
        Rational q = p + (Rational(1) - p) * r;
        emit(Term::app(sym::cvx, q, {Term::app(sym::cvx, p / q, {a, b.args()[0]}), b.args()[1]}),
             "assoc", true);
    }
    if (a.is_app() && a.head() == sym::cvx && a.param()) {
        const Rational s = *a.param();
        Rational p0 = p * s;
        Rational r0 = (p - p0) / (Rational(1) - p0);
        if (p0.in_open_unit_interval() && r0.in_open_unit_interval())
            emit(Term::app(sym::cvx, p0,
                           {a.args()[0], Term::app(sym::cvx, r0, {a.args()[1], b})}),
                 "assoc", false);
    }
}

void rewrites_below(const Theory& th, const std::vector<Equation>& axioms, const Term& whole,
                    const Term& at, std::vector<int>& path, const std::vector<Term>& fresh,
                    int max_nodes, std::vector<Candidate>& out) {
    for (const auto& eq : axioms) {
        axiom_rewrites(whole, at, path, eq, true, fresh, max_nodes, out);
        axiom_rewrites(whole, at, path, eq, false, fresh, max_nodes, out);
    }
    if (th.backend == BackendKind::Convex)
        convex_rewrites(th, whole, at, path, max_nodes, out);
    for (int i = 0; i < at.arity(); ++i) {
        path.push_back(i + 1);
        rewrites_below(th, axioms, whole, at.args()[i], path, fresh, max_nodes, out);
        path.pop_back();
    }
}

std::vector<Candidate> neighbors(const Theory& th, const std::vector<Equation>& axioms,
                                 const Term& t, const std::vector<Term>& fresh, int max_nodes) {
    std::vector<Candidate> out;
    std::vector<int> path;
    rewrites_below(th, axioms, t, t, path, fresh, max_nodes, out);
    return out;
}

struct Visit {
    Term term;
    std::string parent; // key of predecessor, empty at the roots
    ProofStep step;
};

} // namespace

EqVerdict bounded_prove(const Theory& th, const Term& a, const Term& b, ProveBudget budget,
                        const std::vector<Equation>& extra_axioms) {
    EqVerdict v;
    if (a == b) {
        v.verdict = Eq::Equal;
        v.trace = ProofTrace{a, {}};
        return v;
    }

    std::vector<Equation> axioms = th.eqs();
    axioms.insert(axioms.end(), extra_axioms.begin(), extra_axioms.end());

    std::vector<Term> fresh;
    {
        std::set<std::string> seen;
        for (const auto& t : {a, b})
            for (const auto& x : vars(t))
                if (seen.insert(x).second) fresh.push_back(Term::var(x));
        for (const auto& c : th.sig().constants())
            if (seen.insert(c).second) fresh.push_back(Term::constant(c));
        // constants that only occur in the goals or in supplied facts still
        // make valid instantiations (annihilation facts adjoin one)
        std::function<void(const Term&)> consts = [&](const Term& t) {
            if (t.is_const() && seen.insert(t.head()).second)
                fresh.push_back(Term::constant(t.head()));
            for (const auto& arg : t.args()) consts(arg);
        };
        consts(a);
        consts(b);
        for (const auto& eq : extra_axioms) {
            consts(eq.lhs);
            consts(eq.rhs);
        }
    }

    // bidirectional breadth-first closure; sides 0 (from a) and 1 (from b)
    std::unordered_map<std::string, Visit> visited[2];
    std::deque<std::string> frontier[2];
    visited[0][a.key()] = {a, "", {}};
    visited[1][b.key()] = {b, "", {}};
    frontier[0].push_back(a.key());
    frontier[1].push_back(b.key());

    auto build_trace = [&](const std::string& meet) {
        // forward half: a -> meet
        std::vector<ProofStep> fwd;
        for (std::string k = meet; !visited[0][k].parent.empty(); k = visited[0][k].parent)
            fwd.push_back(visited[0][k].step);
        std::reverse(fwd.begin(), fwd.end());
        // backward half: meet -> b, each step undone in reverse
        std::vector<ProofStep> bwd;
        for (std::string k = meet; !visited[1][k].parent.empty(); k = visited[1][k].parent) {
            ProofStep s = visited[1][k].step;
            s.forward = !s.forward;
            s.result = visited[1][visited[1][k].parent].term;
            bwd.push_back(s);
        }
        ProofTrace trace{a, {}};
        trace.steps = std::move(fwd);
        trace.steps.insert(trace.steps.end(), bwd.begin(), bwd.end());
        return trace;
    };

    int states = 0;
    while ((!frontier[0].empty() || !frontier[1].empty()) && states < budget.max_states) {
        for (int side = 0; side < 2; ++side) {
            if (frontier[side].empty()) continue;
            std::string key = frontier[side].front();
            frontier[side].pop_front();
            Term cur = visited[side][key].term;
            ++states;
            for (auto& cand : neighbors(th, axioms, cur, fresh, budget.max_term_nodes)) {
                std::string ck = cand.result.key();
                if (visited[side].count(ck)) continue;
                visited[side][ck] = {cand.result, key, cand.step};
                if (visited[1 - side].count(ck)) {
                    v.verdict = Eq::Equal;
                    v.trace = build_trace(ck);
                    return v;
                }
                frontier[side].push_back(ck);
            }
            if (states >= budget.max_states) break;
        }
    }
    v.verdict = Eq::Unknown;
    v.report = "proof search exhausted: " + std::to_string(states) + " states, frontier " +
               std::to_string(frontier[0].size() + frontier[1].size()) + ", instance cap " +
               std::to_string(budget.max_term_nodes) + " nodes";
    return v;
}

// ---------- finite countermodels ----------

namespace {

struct TableLayout {
    std::string op;
    int arity;
    int offset; // into the flat cell vector
    int entries;
};

int eval_partial(const Term& t, const std::map<std::string, int>& assign,
                 const std::vector<TableLayout>& layout, const std::vector<int>& cells, int n) {
    if (t.is_var()) return assign.at(t.head());
    const TableLayout* tl = nullptr;
    for (const auto& l : layout)
        if (l.op == t.head()) { tl = &l; break; }
    if (!tl) return -2; // symbol absent: cannot happen for validated terms
    int index = 0;
    for (const auto& arg : t.args()) {
        int v = eval_partial(arg, assign, layout, cells, n);
        if (v < 0) return v;
        index = index * n + v;
    }
    return cells[static_cast<size_t>(tl->offset + index)];
}

bool assignments_ok(const std::vector<Equation>& eqs, const std::vector<TableLayout>& layout,
                    const std::vector<int>& cells, int n) {
    for (const auto& eq : eqs) {
        std::vector<std::string> xs;
        {
            std::set<std::string> seen;
            for (const auto& x : vars(eq.lhs)) if (seen.insert(x).second) xs.push_back(x);
            for (const auto& x : vars(eq.rhs)) if (seen.insert(x).second) xs.push_back(x);
        }
        long long total = 1;
        for (size_t i = 0; i < xs.size(); ++i) total *= n;
        for (long long mask = 0; mask < total; ++mask) {
            std::map<std::string, int> assign;
            long long m = mask;
            for (const auto& x : xs) {
                assign[x] = static_cast<int>(m % n);
                m /= n;
            }
            int l = eval_partial(eq.lhs, assign, layout, cells, n);
            int r = eval_partial(eq.rhs, assign, layout, cells, n);
            if (l >= 0 && r >= 0 && l != r) return false;
        }
    }
    return true;
}

} // namespace

int FiniteModel::eval(const Term& t) const {
    if (t.is_var()) return assignment.at(t.head());
    const auto& table = tables.at(t.head());
    int index = 0;
    for (const auto& arg : t.args()) index = index * size + eval(arg);
    return table[static_cast<size_t>(index)];
}

bool FiniteModel::satisfies(const std::vector<Equation>& eqs) const {
    std::vector<TableLayout> layout;
    std::vector<int> cells;
    for (const auto& [op, table] : tables) {
        int arity = 0;
        size_t entries = table.size();
        while (entries > 1) { entries /= static_cast<size_t>(size); ++arity; }
        layout.push_back({op, arity, static_cast<int>(cells.size()), static_cast<int>(table.size())});
        cells.insert(cells.end(), table.begin(), table.end());
    }
    return assignments_ok(eqs, layout, cells, size);
}

std::optional<FiniteModel> find_countermodel(const Theory& th, const Term& a, const Term& b,
                                             int max_size) {
    for (const auto& [op, info] : th.sig().ops)
        if (info.param_family) return std::nullopt; // infinite symbol family

    for (int n = 1; n <= max_size; ++n) {
        std::vector<TableLayout> layout;
        int total = 0;
        for (const auto& [op, info] : th.sig().ops) {
            int entries = 1;
            for (int i = 0; i < info.arity; ++i) entries *= n;
            layout.push_back({op, info.arity, total, entries});
            total += entries;
        }
        std::vector<int> cells(static_cast<size_t>(total), -1);

        std::vector<std::string> xs;
        {
            std::set<std::string> seen;
            for (const auto& x : vars(a)) if (seen.insert(x).second) xs.push_back(x);
            for (const auto& x : vars(b)) if (seen.insert(x).second) xs.push_back(x);
        }

        std::function<std::optional<FiniteModel>(int)> fill = [&](int cell) -> std::optional<FiniteModel> {
            if (cell == total) {
                // complete table: look for a separating assignment
                long long count = 1;
                for (size_t i = 0; i < xs.size(); ++i) count *= n;
                for (long long mask = 0; mask < count; ++mask) {
                    std::map<std::string, int> assign;
                    long long m = mask;
                    for (const auto& x : xs) {
                        assign[x] = static_cast<int>(m % n);
                        m /= n;
                    }
                    int va = eval_partial(a, assign, layout, cells, n);
                    int vb = eval_partial(b, assign, layout, cells, n);
                    if (va >= 0 && vb >= 0 && va != vb) {
                        FiniteModel model;
                        model.size = n;
                        for (const auto& l : layout)
                            model.tables[l.op] = std::vector<int>(
                                cells.begin() + l.offset, cells.begin() + l.offset + l.entries);
                        model.assignment = assign;
                        return model;
                    }
                }
                return std::nullopt;
            }
            for (int v = 0; v < n; ++v) {
                cells[static_cast<size_t>(cell)] = v;
                if (assignments_ok(th.eqs(), layout, cells, n)) {
                    if (auto m = fill(cell + 1)) return m;
                }
            }
            cells[static_cast<size_t>(cell)] = -1;
            return std::nullopt;
        };
        if (auto m = fill(0)) return m;
    }
    return std::nullopt;
}

} // namespace distlaw
