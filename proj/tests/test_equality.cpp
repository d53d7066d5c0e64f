#include "doctest.h"

#include "distlaw/equality.hpp"
#include "distlaw/parse.hpp"

#include <random>
#include <set>

using namespace distlaw;

namespace {

Term V(const std::string& s) { return Term::var(s); }
Term B(const std::string& op, const Term& a, const Term& b) { return Term::app(op, {a, b}); }
Term C(const std::string& p, const Term& a, const Term& b) {
    return Term::app("+", Rational::parse(p), {a, b});
}

// independent oracle: direct convex-combination weight evaluation
void weights_of(const Term& t, Rational w, std::map<std::string, Rational>& acc) {
    if (t.is_var()) {
        auto [it, fresh] = acc.emplace(t.head(), w);
        if (!fresh) it->second = it->second + w;
        return;
    }
    Rational p = *t.param();
    weights_of(t.args()[0], w * p, acc);
    weights_of(t.args()[1], w * (Rational(1) - p), acc);
}

std::map<std::string, Rational> distribution(const Theory& convex, const Term& t) {
    std::map<std::string, Rational> acc;
    weights_of(normalize(convex, t), Rational(1), acc);
    return acc;
}

Term random_boom_term(std::mt19937& rng, const std::vector<std::string>& xs, bool unital,
                      int depth) {
    int pick = static_cast<int>(rng() % (xs.size() + (unital ? 1 : 0)));
    if (depth == 0 || rng() % 3 == 0) {
        if (unital && pick == static_cast<int>(xs.size())) return Term::constant("e");
        return V(xs[static_cast<size_t>(pick) % xs.size()]);
    }
    return B("*", random_boom_term(rng, xs, unital, depth - 1),
             random_boom_term(rng, xs, unital, depth - 1));
}

} // namespace

TEST_CASE("normal forms for the stock hierarchy") {
    auto ua = load_catalog("UA");
    // units vanish and association flattens: the class is the word
    Term t = B("*", B("*", V("x"), Term::constant("e")), B("*", V("y"), V("z")));
    CHECK(normalize(*ua, t) == B("*", V("x"), B("*", V("y"), V("z"))));

    auto uac = load_catalog("UAC");
    // the class is the multiset
    Term u = B("*", V("x"), B("*", V("y"), V("x")));
    CHECK(normalize(*uac, u) == B("*", V("x"), B("*", V("x"), V("y"))));

    auto uaci = load_catalog("UACI");
    CHECK(normalize(*uaci, u) == B("*", V("x"), V("y")));
    CHECK(decide_equal(*uaci, B("*", V("x"), V("x")), V("x")).equal());
}

TEST_CASE("convex combinations normalize to exact distributions") {
    auto convex = load_catalog("Convex");
    Term t = C("1/2", V("x"), C("1/2", V("y"), V("x")));

    // oracle: direct weight evaluation gives x -> 3/4, y -> 1/4
    auto dist = distribution(*convex, t);
    CHECK(dist["x"] == Rational(3, 4));
    CHECK(dist["y"] == Rational(1, 4));
    CHECK(normalize(*convex, t) == C("3/4", V("x"), V("y")));

    CHECK(decide_equal(*convex, C("1/3", V("x"), V("y")), C("2/3", V("y"), V("x"))).equal());
    CHECK(decide_equal(*convex, C("1/3", V("x"), V("y")), C("1/3", V("y"), V("x"))).distinct());
    CHECK(normalize(*convex, C("1/2", V("x"), V("x"))) == V("x"));
}

TEST_CASE("words, readers, groups, lattices") {
    auto ua = load_catalog("UA");
    Term abides_l = B("*", B("*", V("x"), V("y")), B("*", V("z"), V("w")));
    Term abides_r = B("*", B("*", V("x"), V("z")), B("*", V("y"), V("w")));
    CHECK(decide_equal(*ua, abides_l, abides_r).distinct());

    auto r2 = load_catalog("Reader2");
    CHECK(decide_equal(*r2, abides_l, B("*", V("x"), V("w"))).equal());
    CHECK(decide_equal(*r2, B("*", V("x"), V("y")), B("*", V("y"), V("x"))).distinct());

    auto ab = load_catalog("AbelianGroup");
    Term cancel = B("+", V("x"), Term::app("neg", {V("x")}));
    CHECK(normalize(*ab, cancel) == Term::constant("0"));
    CHECK(decide_equal(*ab, B("+", V("x"), V("y")), B("+", V("y"), V("x"))).equal());
    CHECK(normalize(*ab, Term::app("neg", {Term::app("neg", {V("x")})})) == V("x"));

    auto bl = load_catalog("BoundedLattice");
    Term absorb = B("or", V("x"), B("and", V("x"), V("y")));
    CHECK(normalize(*bl, absorb) == V("x"));
    Term distl = B("or", V("x"), B("and", V("y"), V("z")));
    Term distr = B("and", B("or", V("x"), V("y")), B("or", V("x"), V("z")));
    CHECK(decide_equal(*bl, distl, distr).distinct()); // free lattices are not distributive
    CHECK(normalize(*bl, B("and", V("x"), Term::constant("top"))) == V("x"));
    CHECK(normalize(*bl, B("or", V("x"), Term::constant("top"))) == Term::constant("top"));
    // a join component that is a meet with a meetand below the whole join collapses
    Term w = B("or", B("and", B("or", V("p"), V("q")), B("or", V("p"), V("s"))), V("q"));
    CHECK(normalize(*bl, w) == normalize(*bl, B("or", V("p"), V("q"))));
}

TEST_CASE("free bands have the classical canonical forms") {
    auto ai = load_catalog("AI");
    Term aba = B("*", V("a"), B("*", V("b"), V("a")));
    Term ab = B("*", V("a"), V("b"));
    CHECK(decide_equal(*ai, aba, ab).distinct());
    CHECK(decide_equal(*ai, B("*", aba, aba), aba).equal());
    // abba = a(bb)a = aba
    Term abba = B("*", B("*", V("a"), V("b")), B("*", V("b"), V("a")));
    CHECK(decide_equal(*ai, abba, aba).equal());
    // (ab)(ab) = ab
    CHECK(decide_equal(*ai, B("*", ab, ab), ab).equal());
}

TEST_CASE("bounded proof search") {
    auto bl = load_catalog("BoundedLattice");
    SUBCASE("reflexivity closes in zero steps") {
        auto v = bounded_prove(*bl, V("x"), V("x"), {12, 100});
        CHECK(v.equal());
        CHECK(v.trace->steps.empty());
    }
    SUBCASE("absorption instance closes in one step with the absorption axiom") {
        Term lhs = B("or", V("x"), B("and", V("x"), Term::constant("top")));
        auto v = bounded_prove(*bl, lhs, V("x"), {12, 5000});
        REQUIRE(v.equal());
        CHECK(v.trace->steps.size() == 1);
    }
    SUBCASE("the unit-then-idempotence chain is found without absorption") {
        // same instance in the absorption-free fragment: meet with top, then
        // collapse the idempotent join, a two-step trace
        Theory frag;
        frag.pres.name = "LatticeFragment";
        frag.pres.sig = bl->sig();
        for (const auto& eq : bl->eqs())
            if (eq.name.rfind("absorb", 0) != 0) frag.pres.eqs.push_back(eq);
        TheoryPtr fragp = Theory::finalize(std::move(frag));
        Term lhs = B("or", V("x"), B("and", V("x"), Term::constant("top")));
        auto v = bounded_prove(*fragp, lhs, V("x"), {12, 20000});
        REQUIRE(v.equal());
        CHECK(v.trace->steps.size() == 2);
    }
    SUBCASE("an adjoined annihilation fact collapses the group") {
        auto ab = load_catalog("AbelianGroup");
        std::vector<Equation> facts = {
            {"annihilate_right", B("+", V("u"), Term::constant("1")), Term::constant("1")},
            {"annihilate_left", B("+", Term::constant("1"), V("u")), Term::constant("1")},
        };
        auto v = bounded_prove(*ab, V("x"), Term::constant("1"), {12, 20000}, facts);
        REQUIRE(v.equal());
        CHECK(v.trace->steps.size() >= 3); // unit, inverse, then the facts
    }
}

TEST_CASE("finite countermodels") {
    SUBCASE("idempotent magma separates x*y from x on two elements") {
        auto i = load_catalog("I");
        auto m = find_countermodel(*i, B("*", V("x"), V("y")), V("x"), 3);
        REQUIRE(m.has_value());
        CHECK(m->size == 2);
        CHECK(m->satisfies(i->eqs()));
        CHECK(m->eval(B("*", V("x"), V("y"))) != m->eval(V("x")));
    }
    SUBCASE("a three-element monoid is not commutative") {
        auto ua = load_catalog("UA");
        auto m = find_countermodel(*ua, B("*", V("x"), V("y")), B("*", V("y"), V("x")), 3);
        REQUIRE(m.has_value());
        CHECK(m->size == 3);
        CHECK(m->satisfies(ua->eqs()));
    }
    SUBCASE("no model separates the sides of an axiom") {
        auto uac = load_catalog("UAC");
        CHECK(!find_countermodel(*uac, B("*", V("x"), V("y")), B("*", V("y"), V("x")), 3));
    }
}

TEST_CASE("metaproperty certificates") {
    auto uaci = load_catalog("UACI");
    CHECK(uaci->meta.variable_faithful);
    CHECK(uaci->meta.constant_count == 1);
    CHECK(uaci->meta.closed_terms_are_constants);
    CHECK(uaci->meta.all_ops_unital_or_idempotent);
    CHECK(uaci->meta.linear_presentation == false); // idempotence is not linear

    auto uac = load_catalog("UAC");
    CHECK(uac->meta.linear_presentation);
    CHECK(uac->meta.variable_faithful);

    auto ab = load_catalog("AbelianGroup");
    CHECK(!ab->meta.variable_faithful);
    CHECK(!ab->meta.weak_constant_stability);

    auto exc = load_catalog("Exception{a,b}");
    CHECK(exc->meta.constant_count == 2);
    CHECK(exc->meta.all_ops_unital_or_idempotent); // vacuous: no non-constant ops
    CHECK(exc->meta.variable_faithful);

    auto mt = load_catalog("MT");
    CHECK(!mt->meta.variable_faithful);
    CHECK(mt->meta.weak_constant_stability);
    CHECK(!mt->meta.closed_terms_are_constants); // 1+1 is a third closed class
    CHECK(load_catalog("PM")->meta.closed_terms_are_constants);
    CHECK(mt->meta.constant_count == 2);

    auto r2 = load_catalog("Reader2");
    CHECK(!r2->meta.variable_faithful);
    CHECK(r2->meta.all_ops_unital_or_idempotent);

    auto bl = load_catalog("BoundedLattice");
    CHECK(!bl->meta.variable_faithful);
    CHECK(bl->meta.constant_count == 2);
}

TEST_CASE("user-asserted metaproperties carry their provenance") {
    TheoryPtr th = parse_theory(R"(
theory Idem {
  op f : 2;
  eq idem: f(x,x) = x;
  assert variable_faithful;
})");
    CHECK(th->meta.variable_faithful);
    CHECK(th->meta.prov("variable_faithful") == Provenance::UserAsserted);
    CHECK(th->meta.consistent); // a two-element model separates two variables
    CHECK(th->meta.prov("consistent") == Provenance::Computed);
    CHECK(th->meta.all_ops_unital_or_idempotent);
}

TEST_CASE("normal forms are idempotent and invariant under axiom rewrites") {
    std::mt19937 rng(99);
    for (const char* id : {"Empty", "I", "CI", "A", "AI", "U", "UI", "UA", "UAI", "UAC", "UACI"}) {
        auto th = load_catalog(id);
        for (int trial = 0; trial < 60; ++trial) {
            Term t = random_boom_term(rng, {"x", "y", "z"}, th->flags.unital, 3);
            Term nf = normalize(*th, t);
            CHECK(normalize(*th, nf) == nf);
            if (th->meta.variable_faithful) {
                auto tv = vars(t), nv = vars(nf);
                CHECK(std::set<std::string>(tv.begin(), tv.end()) ==
                      std::set<std::string>(nv.begin(), nv.end()));
            }
        }
    }
}

TEST_CASE("decisive proof search always agrees with the oracles") {
    std::mt19937 rng(1234);
    for (const char* id : {"U", "UA", "UAC", "UACI", "AI"}) {
        auto th = load_catalog(id);
        int decisive = 0;
        for (int trial = 0; trial < 40; ++trial) {
            Term t1 = random_boom_term(rng, {"x", "y"}, th->flags.unital, 2);
            Term t2 = random_boom_term(rng, {"x", "y"}, th->flags.unital, 2);
            auto proved = bounded_prove(*th, t1, t2, {10, 1500});
            if (proved.equal()) {
                ++decisive;
                CHECK(decide_equal(*th, t1, t2).equal());
            }
            auto model = find_countermodel(*th, t1, t2, 2);
            if (model) {
                ++decisive;
                CHECK(decide_equal(*th, t1, t2).distinct());
            }
        }
        CHECK(decisive > 0);
    }
}
