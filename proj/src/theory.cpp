#include "distlaw/theory.hpp"
#include "distlaw/equality.hpp"

#include <sstream>
#include <stdexcept>

namespace distlaw {

bool MetaCertificate::flag(const std::string& name) const {
    if (name == "consistent") return consistent;
    if (name == "variable_faithful") return variable_faithful;
    if (name == "closed_terms_are_constants") return closed_terms_are_constants;
    if (name == "all_ops_unital_or_idempotent") return all_ops_unital_or_idempotent;
    if (name == "linear_presentation") return linear_presentation;
    if (name == "weak_constant_stability") return weak_constant_stability;
    throw std::invalid_argument("unknown metaproperty '" + name + "'");
}

Provenance MetaCertificate::prov(const std::string& name) const {
    auto it = provenance.find(name);
    if (it == provenance.end()) return Provenance::Computed;
    return it->second;
}

namespace {

Term V(const std::string& n) { return Term::var(n); }
Term bin(const std::string& op, const Term& a, const Term& b) { return Term::app(op, {a, b}); }

std::vector<Equation> boom_equations(const MagmaFlags& f) {
    std::vector<Equation> eqs;
    Term x = V("x"), y = V("y"), z = V("z");
    Term e = Term::constant(sym::unit);
    if (f.unital) {
        if (f.comm) {
            eqs.push_back({"unit", bin(sym::binop, x, e), x});
        } else {
            eqs.push_back({"unitL", bin(sym::binop, e, x), x});
            eqs.push_back({"unitR", bin(sym::binop, x, e), x});
        }
    }
    if (f.assoc)
        eqs.push_back({"assoc", bin(sym::binop, bin(sym::binop, x, y), z),
                       bin(sym::binop, x, bin(sym::binop, y, z))});
    if (f.comm) eqs.push_back({"comm", bin(sym::binop, x, y), bin(sym::binop, y, x)});
    if (f.idem) eqs.push_back({"idem", bin(sym::binop, x, x), x});
    return eqs;
}

Theory make_boom(const std::string& id, MagmaFlags f) {
    Theory th;
    th.pres.name = id;
    th.pres.oracle_id = id;
    th.backend = BackendKind::Boom;
    th.flags = f;
    th.pres.sig.add(sym::binop, 2);
    if (f.unital) th.pres.sig.add(sym::unit, 0);
    th.pres.eqs = boom_equations(f);
    return th;
}

Theory make_abelian_group() {
    Theory th;
    th.pres.name = "AbelianGroup";
    th.pres.oracle_id = "AbelianGroup";
    th.backend = BackendKind::AbelianGroup;
    th.pres.sig.add(sym::plus, 2);
    th.pres.sig.add(sym::neg, 1);
    th.pres.sig.add(sym::zero, 0);
    Term x = V("x"), y = V("y"), z = V("z");
    th.pres.eqs = {
        {"unit", bin(sym::plus, x, Term::constant(sym::zero)), x},
        {"assoc", bin(sym::plus, bin(sym::plus, x, y), z), bin(sym::plus, x, bin(sym::plus, y, z))},
        {"comm", bin(sym::plus, x, y), bin(sym::plus, y, x)},
        {"inverse", bin(sym::plus, x, Term::app(sym::neg, {x})), Term::constant(sym::zero)},
    };
    return th;
}

Theory make_convex() {
    Theory th;
    th.pres.name = "Convex";
    th.pres.oracle_id = "Convex";
    th.backend = BackendKind::Convex;
    th.pres.sig.add(sym::cvx, 2, /*param_family=*/true);
    Term x = V("x"), y = V("y"), z = V("z");
    auto cx = [](const Rational& p, const Term& a, const Term& b) {
        return Term::app(sym::cvx, p, {a, b});
    };
    // representative instances; the full axiom family over p in (0,1) is
    // handled procedurally by the proof-search backend
    th.pres.eqs = {
        {"idem", cx({1, 2}, x, x), x},
        {"comm", cx({1, 3}, x, y), cx({2, 3}, y, x)},
        {"assoc", cx({1, 2}, x, cx({1, 2}, y, z)), cx({3, 4}, cx({2, 3}, x, y), z)},
    };
    th.enum_params = {{1, 2}, {1, 3}};
    return th;
}

Theory make_reader2() {
    Theory th;
    th.pres.name = "Reader2";
    th.pres.oracle_id = "Reader2";
    th.backend = BackendKind::Reader2;
    th.pres.sig.add(sym::binop, 2);
    Term w = V("w"), x = V("x"), y = V("y"), z = V("z");
    th.pres.eqs = {
        {"idem", bin(sym::binop, x, x), x},
        {"quad", bin(sym::binop, bin(sym::binop, w, x), bin(sym::binop, y, z)),
         bin(sym::binop, w, z)},
    };
    return th;
}

Theory make_bounded_lattice() {
    Theory th;
    th.pres.name = "BoundedLattice";
    th.pres.oracle_id = "BoundedLattice";
    th.backend = BackendKind::BoundedLattice;
    th.pres.sig.add(sym::join, 2);
    th.pres.sig.add(sym::meet, 2);
    th.pres.sig.add(sym::top, 0);
    th.pres.sig.add(sym::bot, 0);
    Term x = V("x"), y = V("y"), z = V("z");
    Term top = Term::constant(sym::top), bot = Term::constant(sym::bot);
    th.pres.eqs = {
        {"unit_join", bin(sym::join, x, bot), x},
        {"unit_meet", bin(sym::meet, x, top), x},
        {"assoc_join", bin(sym::join, bin(sym::join, x, y), z), bin(sym::join, x, bin(sym::join, y, z))},
        {"assoc_meet", bin(sym::meet, bin(sym::meet, x, y), z), bin(sym::meet, x, bin(sym::meet, y, z))},
        {"comm_join", bin(sym::join, x, y), bin(sym::join, y, x)},
        {"comm_meet", bin(sym::meet, x, y), bin(sym::meet, y, x)},
        {"idem_join", bin(sym::join, x, x), x},
        {"idem_meet", bin(sym::meet, x, x), x},
        {"absorb_jm", bin(sym::join, x, bin(sym::meet, x, y)), x},
        {"absorb_mj", bin(sym::meet, x, bin(sym::join, x, y)), x},
    };
    return th;
}

Theory make_exceptions(const std::string& id, const std::vector<std::string>& labels) {
    if (labels.empty()) throw std::invalid_argument("exception theory needs a non-empty label set");
    Theory th;
    th.pres.name = id;
    th.pres.oracle_id = id;
    th.backend = BackendKind::Exceptions;
    th.labels = labels;
    for (const auto& l : labels) th.pres.sig.add(l, 0);
    return th;
}

// Composite polynomial theories: outer commutative (idempotent for P*) sum
// layer over a tree/list/multiset product layer, with zero absorption and
// distributivity on both sides.
Theory make_composite(const std::string& id) {
    Theory th;
    th.pres.name = id;
    th.pres.oracle_id = id;
    th.backend = BackendKind::Composite;
    th.outer_flags = {true, true, true, id[0] == 'P'};
    MagmaFlags inner{true, false, false, false};
    if (id[1] == 'L') inner.assoc = true;
    if (id[1] == 'M') { inner.assoc = true; inner.comm = true; }
    th.inner_flags = inner;
    th.pres.sig.add(sym::plus, 2);
    th.pres.sig.add(sym::times, 2);
    th.pres.sig.add(sym::zero, 0);
    th.pres.sig.add(sym::one, 0);
    Term x = V("x"), y = V("y"), z = V("z");
    Term zero = Term::constant(sym::zero), one = Term::constant(sym::one);
    th.pres.eqs = {
        {"unit_sum", bin(sym::plus, x, zero), x},
        {"assoc_sum", bin(sym::plus, bin(sym::plus, x, y), z), bin(sym::plus, x, bin(sym::plus, y, z))},
        {"comm_sum", bin(sym::plus, x, y), bin(sym::plus, y, x)},
    };
    if (th.outer_flags.idem)
        th.pres.eqs.push_back({"idem_sum", bin(sym::plus, x, x), x});
    if (inner.comm) {
        th.pres.eqs.push_back({"unit_prod", bin(sym::times, x, one), x});
    } else {
        th.pres.eqs.push_back({"unit_prodL", bin(sym::times, one, x), x});
        th.pres.eqs.push_back({"unit_prodR", bin(sym::times, x, one), x});
    }
    if (inner.assoc)
        th.pres.eqs.push_back({"assoc_prod", bin(sym::times, bin(sym::times, x, y), z),
                               bin(sym::times, x, bin(sym::times, y, z))});
    if (inner.comm)
        th.pres.eqs.push_back({"comm_prod", bin(sym::times, x, y), bin(sym::times, y, x)});
    th.pres.eqs.push_back({"zeroL", bin(sym::times, zero, x), zero});
    th.pres.eqs.push_back({"zeroR", bin(sym::times, x, zero), zero});
    th.pres.eqs.push_back({"distL", bin(sym::times, x, bin(sym::plus, y, z)),
                           bin(sym::plus, bin(sym::times, x, y), bin(sym::times, x, z))});
    th.pres.eqs.push_back({"distR", bin(sym::times, bin(sym::plus, x, y), z),
                           bin(sym::plus, bin(sym::times, x, z), bin(sym::times, y, z))});
    return th;
}

std::optional<MagmaFlags> boom_flags(const std::string& id) {
    static const std::map<std::string, MagmaFlags> table = {
        {"Empty", {false, false, false, false}}, {"I", {false, false, false, true}},
        {"C", {false, false, true, false}},      {"CI", {false, false, true, true}},
        {"A", {false, true, false, false}},      {"AI", {false, true, false, true}},
        {"AC", {false, true, true, false}},      {"ACI", {false, true, true, true}},
        {"U", {true, false, false, false}},      {"UI", {true, false, false, true}},
        {"UC", {true, false, true, false}},      {"UCI", {true, false, true, true}},
        {"UA", {true, true, false, false}},      {"UAI", {true, true, false, true}},
        {"UAC", {true, true, true, false}},      {"UACI", {true, true, true, true}},
    };
    auto it = table.find(id);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

std::optional<std::vector<std::string>> exception_labels(const std::string& id) {
    if (id == "Maybe") return std::vector<std::string>{"bottom"};
    if (id.rfind("Exception{", 0) != 0 || id.back() != '}') return std::nullopt;
    std::string body = id.substr(10, id.size() - 11);
    std::vector<std::string> labels;
    std::istringstream in(body);
    std::string piece;
    while (std::getline(in, piece, ',')) {
        if (piece.empty()) return std::nullopt;
        labels.push_back(piece);
    }
    if (labels.empty()) return std::nullopt;
    return labels;
}

bool is_composite_id(const std::string& id) {
    return id == "MT" || id == "ML" || id == "MM" || id == "PT" || id == "PL" || id == "PM";
}

} // namespace

bool is_catalog_id(const std::string& id) {
    return boom_flags(id).has_value() || id == "AbelianGroup" || id == "BoundedLattice" ||
           id == "Convex" || id == "Reader2" || is_composite_id(id) ||
           exception_labels(id).has_value();
}

TheoryPtr load_catalog(const std::string& id) {
    if (auto f = boom_flags(id)) return Theory::finalize(make_boom(id, *f));
    if (id == "AbelianGroup") return Theory::finalize(make_abelian_group());
    if (id == "BoundedLattice") return Theory::finalize(make_bounded_lattice());
    if (id == "Convex") return Theory::finalize(make_convex());
    if (id == "Reader2") return Theory::finalize(make_reader2());
    if (is_composite_id(id)) return Theory::finalize(make_composite(id));
    if (auto labels = exception_labels(id)) return Theory::finalize(make_exceptions(id, *labels));
    throw std::invalid_argument("unknown catalog id '" + id + "'");
}

std::vector<std::string> catalog_ids() {
    std::vector<std::string> ids = {"Empty", "I", "C", "CI", "A", "AI", "AC", "ACI",
                                    "U", "UI", "UC", "UCI", "UA", "UAI", "UAC", "UACI",
                                    "MT", "ML", "MM", "PT", "PL", "PM",
                                    "AbelianGroup", "BoundedLattice", "Convex", "Reader2",
                                    "Exception{a,b}", "Maybe"};
    return ids;
}

TheoryPtr Theory::finalize(Theory t) {
    auto out = std::make_shared<Theory>(std::move(t));
    out->meta = certify_meta(*out);
    return out;
}

} // namespace distlaw
