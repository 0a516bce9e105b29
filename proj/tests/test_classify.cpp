#include <gtest/gtest.h>

#include "generators.hpp"
#include "hornlog/classify.hpp"
#include "hornlog/colimits.hpp"
#include "hornlog/engine.hpp"
#include "hornlog/errors.hpp"
#include "hornlog/parser.hpp"
#include "hornlog/printer.hpp"
#include "hornlog/search.hpp"
#include "oracles.hpp"

using namespace hornlog;
using namespace hornlog::testing;

namespace {

SignaturePtr algebra_sig() {
    return parse_theory("sort S; pred p: S; func f: S*S -> S; func g: S -> S; func c: -> S;").sig;
}

SignaturePtr order_sig() { return parse_theory("sort V; pred E: V*V; pred Le: V*V;").sig; }

std::string flat(const std::string& formula) {
    auto sig = algebra_sig();
    auto f = flatten_formula(parse_formula(formula, *sig));
    return print_formula(f, *relationalized(sig).relational);
}

Sequent seq(const std::string& text, const SignaturePtr& sig) { return parse_sequent(text, *sig); }

}  // namespace

TEST(Flatten, TermExamples) {
    auto sig = algebra_sig();
    FreshNames fresh;
    auto v = flatten_term(Term::variable("v", 0), fresh);
    EXPECT_TRUE(v.formula.empty());
    EXPECT_EQ(v.result.var, "v");
    auto rel = relationalized(sig).relational;
    FreshNames fresh2;
    auto gf = flatten_term(parse_formula("g(f(x, y))!", *sig)[0].args[0], fresh2);
    EXPECT_EQ(print_formula(gf.formula, *rel), "f(x, y, _u0) & g(_u0, _u1)");
    EXPECT_EQ(gf.result.var, "_u1");
    EXPECT_EQ(fresh2.counter(), 2u);
}

TEST(Flatten, FormulaExamples) {
    EXPECT_EQ(flat("f(x1, x2) = x1 & f(x1, x2) = x2"), "f(x1, x2, _u0) & _u0 = x1 & f(x1, x2, _u1) & _u1 = x2");
    EXPECT_EQ(flat("p(v)"), "p(v)");
    EXPECT_EQ(flat("g(x)!"), "g(x, _u0) & _u0!");
    EXPECT_EQ(flat("c()!"), "c(_u0) & _u0!");
    EXPECT_EQ(flat("p(g(g(x))) & x = c()"), "g(x, _u0) & g(_u0, _u1) & p(_u1) & c(_u2) & x = _u2");
}

TEST(Flatten, FreshNamesAvoidInputVariables) {
    EXPECT_EQ(flat("g(_u0) = _u1"), "g(_u0, _u2) & _u2 = _u1");
}

TEST(Flatten, SequentSharesOneCounter) {
    auto sig = algebra_sig();
    auto s = flatten_sequent(seq("g(x)! => g(g(x))!", sig));
    EXPECT_EQ(print_sequent(s, *relationalized(sig).relational), "g(x, _u0) & _u0! => g(x, _u1) & g(_u1, _u2) & _u2!");
}

TEST(Flatten, OutputIsRhlWithDistinctFreshVariables) {
    Rng rng(7);
    SequentShape shape;
    shape.term_depth = 2;
    auto sig = algebraic_signature();
    auto rel = relationalized(sig).relational;
    for (int i = 0; i < 200; ++i) {
        auto s = random_sequent(rng, *sig, shape);
        auto f = flatten_sequent(s);
        EXPECT_TRUE(is_rhl(f, *rel));
        EXPECT_NO_THROW(validate(f, *rel));
        const auto before = variable_names(s);
        for (const auto& v : variables(f))
            if (!before.count(v.name)) EXPECT_EQ(v.name.rfind("_u", 0), 0u);
    }
}

TEST(Unflatten, Examples) {
    auto sig = algebra_sig();
    auto rel = relationalized(sig).relational;
    Formula graph{Atom::relation(1, {Term::variable("x", 0), Term::variable("y", 0), Term::variable("z", 0)})};
    EXPECT_EQ(print_formula(unflatten_formula(graph, *sig), *sig), "f(x, y) = z");
    EXPECT_EQ(print_formula(unflatten_formula(parse_formula("p(x) & x!", *rel), *sig), *sig), "p(x) & x!");
}

TEST(Unflatten, KeepsVariableSetAndFlattensBack) {
    Rng rng(9);
    SequentShape shape;
    shape.term_depth = 2;
    auto sig = algebraic_signature();
    for (int i = 0; i < 200; ++i) {
        auto s = random_sequent(rng, *sig, shape);
        auto f = flatten_formula(s.premise);
        auto u = unflatten_formula(f, *sig);
        EXPECT_EQ(variable_names(u), variable_names(f));
        EXPECT_TRUE(is_valid_phl(u, *sig));
    }
}

TEST(Unflatten, AgreesSemanticallyOnAlgebras) {
    // Graph atoms of a relational sequent and equations of its unflattening
    // hold of the same assignments in an algebraic structure.
    Rng rng(13);
    auto sig = algebraic_signature();
    auto rel = relationalized(sig).relational;
    for (int i = 0; i < 300; ++i) {
        auto s = random_sequent(rng, *rel, {});
        auto x = random_algebra(rng, sig, 2);
        EXPECT_EQ(satisfies(x, s), oracle_satisfies(x, unflatten_sequent(s, *sig))) << print_sequent(s, *rel);
    }
}

TEST(ClassifyingStructure, Examples) {
    auto sig = order_sig();
    auto point = classifying_structure(parse_formula("v:V!", *sig), sig);
    EXPECT_EQ(point.structure->canonical_count(0), 1u);
    EXPECT_EQ(point.structure->total_tuple_count(), 0u);
    auto eq = classifying_structure(parse_formula("u = v & E(u, u)", *sig), sig);
    EXPECT_EQ(eq.structure->canonical_count(0), 1u);
    EXPECT_EQ(eq.structure->find(eq.interpretation.at("u")), eq.structure->find(eq.interpretation.at("v")));
    auto path = classifying_structure(parse_formula("E(u, v) & E(v, w)", *sig), sig);
    EXPECT_EQ(path.structure->canonical_count(0), 3u);
    EXPECT_EQ(path.structure->tuples(0).size(), 2u);
    EXPECT_EQ(classifying_structure({}, sig).structure->total_canonical_count(), 0u);
}

TEST(ClassifyingMorphism, Examples) {
    auto sig = order_sig();
    auto trans = classifying_morphism(seq("E(u,v) & E(v,w) => E(u,w)", sig), sig);
    EXPECT_TRUE(trans.is_valid());
    EXPECT_TRUE(trans.is_injective());
    EXPECT_TRUE(trans.is_surjective());
    EXPECT_EQ(trans.codomain->tuples(0).size(), 3u);
    EXPECT_TRUE(trans.codomain->contains(0, Tuple{trans(0, 0), trans(0, 2)}));

    auto anti = classifying_morphism(seq("Le(u,v) & Le(v,u) => u = v", sig), sig);
    EXPECT_FALSE(anti.is_injective());
    EXPECT_TRUE(anti.is_surjective());
    EXPECT_EQ(anti(0, 0), anti(0, 1));

    auto fresh = classifying_morphism(seq("true => v:V!", sig), sig);
    EXPECT_EQ(fresh.domain->total_canonical_count(), 0u);
    EXPECT_EQ(fresh.codomain->canonical_count(0), 1u);
}

TEST(SequentFromMorphism, Examples) {
    auto sig = graph_signature();
    Structure point(sig);
    point.add_element(0);
    auto p = share(point);
    EXPECT_EQ(print_sequent(sequent_from_morphism(Morphism::identity(p)), *sig), "_eV#0:V! => true");

    Structure two(sig);
    two.add_element(0);
    two.add_element(0);
    auto collapse = make_morphism(share(two), p, {{0, 0}});
    EXPECT_EQ(print_sequent(sequent_from_morphism(collapse), *sig), "_eV#0:V! & _eV#1:V! => _eV#0 = _eV#1");

    Structure path(sig), closed(sig);
    for (int i = 0; i < 3; ++i) {
        path.add_element(0);
        closed.add_element(0);
    }
    for (auto* x : {&path, &closed}) {
        x->add_tuple(0, Tuple{0, 1});
        x->add_tuple(0, Tuple{1, 2});
    }
    closed.add_tuple(0, Tuple{0, 2});
    auto edge = make_morphism(share(path), share(closed), {{0, 1, 2}});
    EXPECT_EQ(print_sequent(sequent_from_morphism(edge), *sig),
              "E(_eV#0, _eV#1) & E(_eV#1, _eV#2) => E(_eV#0, _eV#2)");
}

TEST(SequentFromMorphism, RoundTripIsIsomorphic) {
    Rng rng(21);
    auto sig = two_sorted_signature();
    for (int i = 0; i < 40; ++i) {
        auto f = random_morphism(rng, sig, 3);
        auto s = sequent_from_morphism(f);
        EXPECT_TRUE(is_rhl(s, *sig));
        EXPECT_TRUE(arrows_isomorphic(f, classifying_morphism(s, sig))) << print_sequent(s, *sig);
    }
}

TEST(SequentFromMorphism, InvertsClassifyingMorphism) {
    Rng rng(22);
    auto sig = two_sorted_signature();
    for (int i = 0; i < 40; ++i) {
        auto s = random_sequent(rng, *sig, {});
        auto f = classifying_morphism(s, sig);
        EXPECT_TRUE(arrows_isomorphic(f, classifying_morphism(sequent_from_morphism(f), sig)));
    }
}

TEST(ClassifySequent, Examples) {
    auto sig = order_sig();
    auto t = classify_sequent(seq("E(u,v) & E(v,w) => E(u,w)", sig), *sig);
    EXPECT_TRUE(t.is_rhl && t.injective && t.surjective && t.datalog && t.epic_phl);
    auto a = classify_sequent(seq("Le(u,v) & Le(v,u) => u = v", sig), *sig);
    EXPECT_TRUE(a.surjective);
    EXPECT_FALSE(a.injective);
    EXPECT_FALSE(a.datalog);
    EXPECT_FALSE(a.datalog_choice);

    auto fun = functionality_theory(algebra_sig());
    auto rel = relationalized(algebra_sig()).relational;
    auto ff = classify_sequent(fun.sequents[0], *rel);
    EXPECT_TRUE(ff.surjective);
    EXPECT_FALSE(ff.injective);

    auto refl = classify_sequent(seq("x! => E(x, x)", sig), *sig);
    EXPECT_FALSE(refl.datalog);
    EXPECT_TRUE(refl.datalog_sortquant);
    auto choice = classify_sequent(seq("E(x, y) => E(y, z)", sig), *sig);
    EXPECT_FALSE(choice.surjective);
    EXPECT_FALSE(choice.datalog_sortquant);
    EXPECT_TRUE(choice.datalog_choice);
    EXPECT_FALSE(choice.epic_phl);
}

TEST(ClassifySequent, PartialHornFlagsFollowFlattening) {
    auto sig = algebra_sig();
    auto s = seq("p(x) => g(x)!", sig);
    auto flags = classify_sequent(s, *sig);
    EXPECT_FALSE(flags.is_rhl);
    EXPECT_TRUE(flags.epic_phl);
    EXPECT_FALSE(flags.surjective) << "the flattening introduces a fresh result variable";
    EXPECT_TRUE(flags.injective);
    EXPECT_FALSE(flags.datalog || flags.datalog_sortquant || flags.datalog_choice);
}

TEST(ClassifySequent, FlagsMatchMorphismShape) {
    Rng rng(31);
    auto sig = two_sorted_signature();
    for (int i = 0; i < 200; ++i) {
        auto s = random_sequent(rng, *sig, {});
        auto flags = classify_sequent(s, *sig);
        auto f = classifying_morphism(s, sig);
        if (flags.injective) EXPECT_TRUE(f.is_injective());
        if (flags.surjective) EXPECT_TRUE(f.is_surjective());
        EXPECT_EQ(flags.datalog, flags.is_rhl && flags.surjective && flags.datalog_sortquant &&
                                     std::none_of(s.premise.begin(), s.premise.end(),
                                                  [](const Atom& a) { return a.kind != Atom::Kind::Rel; }) &&
                                     std::none_of(s.conclusion.begin(), s.conclusion.end(),
                                                  [](const Atom& a) { return a.kind != Atom::Kind::Rel; }));
    }
}

TEST(Functionality, Examples) {
    auto none = std::make_shared<Signature>();
    none->add_sort("V");
    EXPECT_TRUE(functionality_theory(none).sequents.empty());
    auto sig = algebra_sig();
    auto t = functionality_theory(sig);
    ASSERT_EQ(t.sequents.size(), 3u);
    EXPECT_EQ(print_sequent(t.sequents[0], *t.sig), "f(v1, v2, u0) & f(v1, v2, u1) => u0 = u1");
    EXPECT_EQ(print_sequent(t.sequents[1], *t.sig), "g(v1, u0) & g(v1, u1) => u0 = u1");
    EXPECT_EQ(print_sequent(t.sequents[2], *t.sig), "c(u0) & c(u1) => u0 = u1");
    EXPECT_TRUE(is_rhl(t));
}

TEST(Totality, Examples) {
    auto sig = algebra_sig();
    EXPECT_EQ(print_sequent(totality_sequent(*sig, 3), *sig), "true => c()!");
    EXPECT_EQ(print_sequent(totality_sequent(*sig, 2), *sig), "v1! => g(v1)!");
    EXPECT_EQ(print_sequent(totality_sequent(*sig, 1), *sig), "v1! & v2! => f(v1, v2)!");
    EXPECT_THROW(totality_sequent(*sig, 0), SignatureError);
}

TEST(ClassifyingAlgebra, IdentifiesEqualTerms) {
    auto sig = algebra_sig();
    auto alg = classifying_algebra(parse_formula("g(x) = y & g(x) = z", *sig), sig);
    EXPECT_TRUE(is_algebraic(*alg.structure));
    EXPECT_EQ(alg.structure->canonical_count(0), 2u);
    EXPECT_EQ(alg.structure->find(alg.interpretation.at("y")), alg.structure->find(alg.interpretation.at("z")));
}

TEST(Strengthen, Examples) {
    auto sig = order_sig();
    Theory empty{sig, {}};
    EXPECT_TRUE(strengthen_theory(empty).sequents.empty());

    Theory fresh{sig, {seq("true => v:V!", sig)}};
    auto s = strengthen_theory(fresh);
    ASSERT_EQ(s.sequents.size(), 2u);
    EXPECT_EQ(print_sequent(s.sequents[1], *sig), "_eV#0:V! & _eV#1:V! => _eV#0 = _eV#1");

    Theory trans{sig, {seq("E(u,v) & E(v,w) => E(u,w)", sig)}};
    auto t = strengthen_theory(trans);
    ASSERT_EQ(t.sequents.size(), 2u);
    // Surjective input: the codiagonal is an isomorphism, so every structure
    // satisfies the added sequent.
    auto c = classifying_morphism(t.sequents[1], sig);
    EXPECT_TRUE(c.is_injective() && c.is_surjective());
}

TEST(Strengthen, RejectsPartialHornInput) {
    auto sig = algebra_sig();
    Theory t{sig, {seq("p(x) => g(x)!", sig)}};
    EXPECT_THROW(strengthen_theory(t), PreconditionError);
}

TEST(CompositionLaw, ChainedSequentsCompose) {
    Rng rng(41);
    auto sig = two_sorted_signature();
    SequentShape shape;
    shape.max_premise_atoms = 2;
    shape.max_conclusion_atoms = 2;
    for (int i = 0; i < 60; ++i) {
        auto a = random_sequent(rng, *sig, shape);
        auto b = random_sequent(rng, *sig, shape);
        const Formula& f = a.premise;
        const Formula& g = a.conclusion;
        const Formula& h = b.conclusion;
        Formula fg = f;
        fg.insert(fg.end(), g.begin(), g.end());
        Formula gh = g;
        gh.insert(gh.end(), h.begin(), h.end());
        auto first = classifying_morphism(Sequent{f, g, {}}, sig);
        auto second = classifying_morphism(Sequent{fg, h, {}}, sig);
        auto whole = classifying_morphism(Sequent{f, gh, {}}, sig);
        ASSERT_EQ(*first.codomain, *second.domain);
        EXPECT_TRUE(arrows_isomorphic(compose(second, first), whole));
    }
}

TEST(Epic, CodiagonalOfEpicPartialHornSequentIsIso) {
    auto sig = algebra_sig();
    for (const char* text : {"p(x) => g(x)!", "x! & y! => f(x, y) = g(x)", "g(x)! => g(g(x)) = x",
                             "true => c()!", "p(g(x)) => p(x)"}) {
        auto s = seq(text, sig);
        ASSERT_TRUE(classify_sequent(s, *sig).epic_phl);
        auto premise = classifying_algebra(s.premise, sig);
        Formula both = s.premise;
        both.insert(both.end(), s.conclusion.begin(), s.conclusion.end());
        auto whole = classifying_algebra(both, sig);
        // Premise variables pin the map; graph values follow by functionality.
        std::vector<std::optional<std::uint32_t>> fixed(premise.structure->element_count(0));
        for (const auto& [name, e] : premise.interpretation) fixed[e.index] = whole.structure->find(whole.interpretation.at(name)).index;
        PartialMap pm{fixed};
        std::optional<Morphism> f;
        SearchOptions opts;
        opts.fixed = &pm;
        enumerate_morphisms(premise.structure, whole.structure, opts, [&](const Morphism& m) {
            f = m;
            return false;
        });
        ASSERT_TRUE(f.has_value()) << text;
        auto cd = codiagonal(*f);
        // In algebras, the pushout must be reflected back before testing.
        auto functionality = functionality_theory(sig);
        auto reflected = evaluate(functionality, cd.square.object, {.epic_origin = true});
        EXPECT_EQ(reflected.model->total_canonical_count(), whole.structure->total_canonical_count()) << text;
    }
}
