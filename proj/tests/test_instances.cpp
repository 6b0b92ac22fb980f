#include <gtest/gtest.h>

#include "muhard/audit.hpp"
#include "muhard/basis.hpp"
#include "muhard/graph.hpp"
#include "muhard/reductions.hpp"
#include "muhard/serialize.hpp"

using namespace muhard;

TEST(Dimacs, ParsesTriangle) {
  const Graph g = parse_dimacs("c triangle\np edge 3 3\ne 1 2\ne 1 3\ne 2 3\n");
  EXPECT_EQ(g.vertex_count(), 3u);
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{1, 2}, {1, 3}, {2, 3}}));
  EXPECT_EQ(g.edges(), complete_graph(3).edges());
}

TEST(Dimacs, NormalizesSortsAndDeduplicates) {
  const Graph g = parse_dimacs("p edge 3 3\n  e 2 1\ne 3   2\ne 1 2\n\n");
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{1, 2}, {2, 3}}));
}

TEST(Dimacs, ErrorsCarryLineNumbers) {
  auto line_of = [](const char* text) -> std::size_t {
    try {
      parse_dimacs(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("p edge 2 1\ne 1 1\n"), 2u);
  EXPECT_EQ(line_of("c x\np edge 2 1\ne 1 3\n"), 3u);
  EXPECT_EQ(line_of("e 1 2\n"), 1u);
  EXPECT_EQ(line_of("p edge 2 1\nq 1 2\n"), 2u);
  EXPECT_EQ(line_of("p edge 2 1\ne 1 x\n"), 2u);
  EXPECT_EQ(line_of("p edge 2 1\np edge 2 1\n"), 2u);
  EXPECT_NE(line_of(""), 0u);
}

TEST(Dimacs, RoundtripThroughText) {
  const Graph p = petersen_graph();
  const Graph back = parse_dimacs(p.to_dimacs());
  EXPECT_EQ(back.vertex_count(), 10u);
  EXPECT_EQ(back.edges(), p.edges());
  EXPECT_EQ(p.edge_count(), 15u);
}

TEST(Graph, ColoringSearch) {
  EXPECT_TRUE(find_three_coloring(complete_graph(3)).has_value());
  EXPECT_FALSE(find_three_coloring(complete_graph(4)).has_value());
  for (const Graph& g : {cycle_graph(5), path_graph(4), petersen_graph()}) {
    const auto c = find_three_coloring(g);
    ASSERT_TRUE(c.has_value());
    EXPECT_FALSE(find_conflict(g, *c).has_value());
  }
  const auto conflict = find_conflict(complete_graph(3), Coloring{{0, 1, 0}});
  ASSERT_TRUE(conflict.has_value());
  EXPECT_EQ(*conflict, (Edge{1, 3}));
  EXPECT_THROW(find_conflict(complete_graph(3), Coloring{{0, 1}}), DimensionError);
}

TEST(Graph, Components) {
  const Graph g(5, {{1, 2}, {4, 5}});
  const auto cs = g.components();
  ASSERT_EQ(cs.size(), 3u);
  EXPECT_EQ(cs[0], (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(cs[1], (std::vector<std::size_t>{3}));
  EXPECT_EQ(cs[2], (std::vector<std::size_t>{4, 5}));
}

TEST(Encoding, HalfIsOneZeroTwo) {
  const Json j = encode_complex(RationalComplex(make_rational(1, 2)));
  EXPECT_EQ(j["x"], "1");
  EXPECT_EQ(j["y"], "0");
  EXPECT_EQ(j["z"], "2");
  const Json r = encode_real(make_rational(-3, 4));
  EXPECT_EQ(r["x"], "-3");
  EXPECT_EQ(r["z"], "4");
  EXPECT_EQ(decode_real(r, "r"), make_rational(-3, 4));
}

TEST(Encoding, RejectsNonPositiveDenominator) {
  try {
    decode_complex(Json{{"x", "1"}, {"y", "0"}, {"z", "0"}}, "alpha");
    FAIL() << "accepted z = 0";
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("alpha.z"), std::string::npos);
  }
  EXPECT_THROW(decode_complex(Json{{"x", "1"}, {"y", "0"}, {"z", "-2"}}, "v"), SchemaError);
  EXPECT_THROW(decode_complex(Json{{"x", "1.5"}, {"z", "2"}}, "v"), SchemaError);
  EXPECT_THROW(decode_real(Json{{"x", "1"}, {"y", "1"}, {"z", "2"}}, "v"), SchemaError);
}

TEST(Encoding, PrecisionBeyondInt64) {
  const Integer big("123456789012345678901234567890");
  const Json j = encode_precision(big);
  EXPECT_EQ(decode_precision(j, "p"), big);
  EXPECT_EQ(decode_precision(encode_precision(Integer(4734)), "p"), 4734);
  EXPECT_THROW(decode_precision(Json{{"unary_m", 0}}, "p"), SchemaError);
}

TEST(Serialization, TriangleInstanceRoundtripIsBitIdentical) {
  const UqmInstance inst = three_col_to_uqm(complete_graph(3));
  const Json j = to_json(inst);
  const std::string text = canonical_dump(j);
  const auto back = instance_as<UqmInstance>(parse_json(text));
  EXPECT_EQ(back, inst);
  EXPECT_EQ(canonical_dump(to_json(back)), text);
}

TEST(Serialization, AllInstanceTypesRoundtrip) {
  const WoptInstance w({make_rational(1, 3), make_rational(-2, 7)}, make_rational(5, 11), Integer(9));
  EXPECT_EQ(instance_as<WoptInstance>(parse_json(canonical_dump(to_json(w)))), w);
  const WmemInstance x({make_rational(1, 3), 0, make_rational(-1, 9)}, Integer(2));
  EXPECT_EQ(instance_as<WmemInstance>(parse_json(canonical_dump(to_json(x)))), x);
  const MudInstance m = fixed_mud_no_instance();
  EXPECT_EQ(instance_as<MudInstance>(parse_json(canonical_dump(to_json(m)))), m);
}

TEST(Serialization, MalformedDocumentsNameTheField) {
  Json j = to_json(three_col_to_uqm(path_graph(2)));
  j["operators"][0]["nonzeros"][0]["v"]["z"] = "0";
  try {
    instance_from_json(j);
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("operators[0].nonzeros[0].v.z"), std::string::npos) << e.what();
  }
  Json k = to_json(three_col_to_uqm(path_graph(2)));
  k.erase("alpha");
  try {
    instance_from_json(k);
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("alpha"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_json("{not json"), SchemaError);
  Json wrong = to_json(fixed_mud_yes_instance());
  wrong["schema"] = "other/2";
  EXPECT_THROW(instance_from_json(wrong), SchemaError);
  EXPECT_THROW(instance_as<UqmInstance>(to_json(fixed_mud_yes_instance())), SchemaError);
}

TEST(Instances, UqmRejectsLargeOperators) {
  ExactMatrix a(2, 2);
  a(0, 0) = make_rational(3, 4);
  a(1, 1) = make_rational(2, 3);  // 9/16 + 4/9 = 145/144 > 1
  EXPECT_THROW(UqmInstance(2, {a}, 0, Integer(1)), PreconditionError);
  a(1, 1) = make_rational(1, 2);  // 9/16 + 1/4 ≤ 1
  EXPECT_NO_THROW(UqmInstance(2, {a}, 0, Integer(1)));
  EXPECT_THROW(UqmInstance(3, {a}, 0, Integer(1)), DimensionError);
  EXPECT_THROW(UqmInstance(2, {a}, 0, Integer(0)), PreconditionError);
}

TEST(Instances, MudRejectsMatricesOffTheSubspace) {
  EXPECT_THROW(MudInstance(2, ExactMatrix::identity(4), Integer(3)), NotInAffineSubspace);
  ExactMatrix j = depolarizing_choi(2);
  j(0, 1) = RationalComplex::i();
  EXPECT_THROW(MudInstance(2, j, Integer(3)), NotInAffineSubspace);
  EXPECT_NO_THROW(MudInstance(2, depolarizing_choi(2), Integer(3)));
}

TEST(Instances, WoptRequiresUnitBall) {
  EXPECT_THROW(WoptInstance({1, make_rational(1, 10)}, 0, Integer(1)), PreconditionError);
  EXPECT_NO_THROW(WoptInstance({make_rational(3, 5), make_rational(4, 5)}, 0, Integer(1)));
}

TEST(Audit, ColoringGadgetIsBoundedByTwo) {
  for (const Graph& g : {complete_graph(3), complete_graph(4), petersen_graph()}) {
    const PBoundedReport r = audit_p_bounded(AnyInstance(three_col_to_uqm(g)), Polynomial::constant(2));
    EXPECT_TRUE(r.bounded);
    EXPECT_LE(r.max_abs_x, 2);
    EXPECT_EQ(r.max_abs_y, 0);
    EXPECT_EQ(r.max_abs_z, 2);
  }
}

TEST(Audit, LargeNumeratorFailsSquareBound) {
  const WmemInstance inst({Rational(Integer(1000000000))}, Integer(1));
  const AnyInstance any(inst);
  const PBoundedReport r = audit_p_bounded(any, Polynomial::parse("0,0,1"));
  ASSERT_LT(r.length, 31623);
  EXPECT_EQ(r.max_abs_x, 1000000000);
  EXPECT_EQ(r.p_of_length, r.length * r.length);
  EXPECT_FALSE(r.bounded);
}

TEST(Audit, LengthCountsUnaryPrecision) {
  const WmemInstance a({0}, Integer(1)), b({0}, Integer(1001));
  const Integer la = instance_length(AnyInstance(a)), lb = instance_length(AnyInstance(b));
  // Both documents differ by three digits in the precision field.
  EXPECT_EQ(lb - la, 1000 + 3);
}

TEST(Polynomials, ParseAndEvaluate) {
  const Polynomial p = Polynomial::parse("1,-2,3");
  EXPECT_EQ(p(Integer(10)), 281);
  EXPECT_EQ(Polynomial::constant(2)(Integer(99)), 2);
  EXPECT_THROW(Polynomial::parse("1,,2"), SchemaError);
}
