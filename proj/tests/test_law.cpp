#include "doctest.h"

#include "distlaw/law.hpp"

using namespace distlaw;

namespace {
Term V(const std::string& s) { return Term::var(s); }
Term B(const std::string& op, const Term& a, const Term& b) { return Term::app(op, {a, b}); }

// a word [t1,...,tn] as a canonical UA-element
Term word(const std::vector<Term>& letters) {
    if (letters.empty()) return Term::constant("e");
    Term acc = letters.back();
    for (int i = static_cast<int>(letters.size()) - 2; i >= 0; --i)
        acc = B("*", letters[static_cast<size_t>(i)], acc);
    return acc;
}
} // namespace

TEST_CASE("the distributivity law on a word of words expands the product") {
    auto ua = load_catalog("UA");
    AtomPool pool;
    Term l1 = pool.atom(word({V("a"), V("b")}));
    Term l2 = pool.atom(word({V("c"), V("d")}));
    Term out = apply_law(builtin_law("times-over-plus"), *ua, *ua, pool, B("*", l1, l2));

    // expected: the four two-letter words in left-major order
    std::vector<Term> expect;
    for (const char* x : {"a", "b"})
        for (const char* y : {"c", "d"})
            expect.push_back(pool.atom(word({V(x), V(y)})));
    CHECK(out == word(expect));
    CHECK(pool.expand(out).str() ==
          "*(*(a,c),*(*(a,d),*(*(b,c),*(b,d))))");
}

TEST_CASE("the sweep law routes exceptions through the unit") {
    auto exc = load_catalog("Exception{u}");
    auto ua = load_catalog("UA");
    AtomPool pool;

    // an exception maps to the unit of the list layer at its own class
    Term out = apply_law(builtin_law("exception-sweep"), *exc, *ua, pool, Term::constant("u"));
    REQUIRE(out.is_var());
    CHECK(pool.value_of(out.head()) == Term::constant("u"));

    // a plain list maps to the list of singleton classes
    Term inner = pool.atom(word({V("x"), V("y")}));
    Term out2 = apply_law(builtin_law("exception-sweep"), *exc, *ua, pool, inner);
    CHECK(vars(out2).size() == 2);
}

TEST_CASE("the faulty published law picks the first exception") {
    auto ua = load_catalog("UA");
    auto exc = load_catalog("Exception{a,b}");
    AtomPool pool;
    CandidateLaw law = builtin_law("manes-mulry-faulty");

    // [b, []]: one exception letter and one letter for the empty-list class
    Term empty_class = pool.atom(Term::var("y0"));
    Term b_exc = pool.atom(Term::constant("b"));
    Term out = apply_law(law, *ua, *exc, pool, B("*", b_exc, empty_class));
    CHECK(out == Term::constant("a"));

    // a singleton exception is passed through
    CHECK(apply_law(law, *ua, *exc, pool, b_exc) == Term::constant("b"));
    // the empty list maps to its own class under the unit
    Term out3 = apply_law(law, *ua, *exc, pool, Term::constant("e"));
    REQUIRE(out3.is_var());
    CHECK(pool.value_of(out3.head()) == Term::constant("e"));
}

TEST_CASE("the distributivity law passes all axioms over a commutative target") {
    Bounds bounds;
    auto rep = check_beck(builtin_law("times-over-plus"), load_catalog("UAC"),
                          load_catalog("UAC"), bounds);
    INFO(rep.cap_note);
    CHECK(rep.complete);
    CHECK(rep.all_pass());
}

TEST_CASE("the distributivity law fails a multiplication axiom on words") {
    Bounds bounds;
    auto rep = check_beck(builtin_law("times-over-plus"), load_catalog("UA"), load_catalog("UA"),
                          bounds);
    CHECK(rep.complete);
    CHECK(rep.unit1.pass);
    CHECK(rep.unit2.pass);
    CHECK(rep.naturality.pass);
    bool mult_failed = !rep.mult1.pass || !rep.mult2.pass;
    CHECK(mult_failed);
    const AxiomResult& fail = rep.mult1.pass ? rep.mult2 : rep.mult1;
    // the two path values are the two interleavings of the expanded product
    CHECK(fail.lhs != fail.rhs);
}

TEST_CASE("the faulty published law fails the first multiplication axiom") {
    Bounds bounds;
    auto rep = check_beck(builtin_law("manes-mulry-faulty"), load_catalog("UA"),
                          load_catalog("Exception{a,b}"), bounds);
    CHECK(rep.complete);
    CHECK(rep.unit1.pass);
    CHECK(rep.unit2.pass);
    CHECK(!rep.mult1.pass);
}

TEST_CASE("the sweep law satisfies all axioms") {
    Bounds bounds;
    for (const char* target : {"UA", "UAC", "UACI"}) {
        auto rep = check_beck(builtin_law("exception-sweep"), load_catalog("Exception{u,v}"),
                              load_catalog(target), bounds);
        INFO(target, " ", rep.cap_note);
        CHECK(rep.complete);
        CHECK(rep.all_pass());
    }
}

TEST_CASE("verdicts are stable under generator renaming") {
    // rerunning with a different carrier size permutes the generators; the
    // pass/fail pattern must not change
    Bounds small;
    small.max_carrier = 1;
    Bounds larger;
    auto r1 = check_beck(builtin_law("times-over-plus"), load_catalog("UAC"),
                         load_catalog("UACI"), small);
    auto r2 = check_beck(builtin_law("times-over-plus"), load_catalog("UAC"),
                         load_catalog("UACI"), larger);
    CHECK(r1.all_pass());
    CHECK(r2.all_pass());
}
