#include <doctest.h>

#include <sstream>

#include "rtlab/constructions.hpp"
#include "rtlab/io.hpp"
#include "rtlab/report.hpp"

using namespace rtlab;

TEST_CASE("empty report is header only") {
  VerificationReport r;
  r.property = "density";
  std::ostringstream out;
  write_csv(out, r);
  CHECK(out.str() == "# property=density\n# verdict=holds\nname,relation,measured,measured_decimal,bound,bound_decimal,asserted,holds\n");
}

TEST_CASE("csv rows keep exact rationals") {
  VerificationReport r;
  r.property = "x";
  r.comparisons.push_back({"ratio", "<=", Rational(1, 3), Rational(1, 2), 1.0 / 3, 0.5, true, true, true});
  r.comparisons.push_back({"est", "info", Rational(0), Rational(0), 2.5, 0, false, false, true});
  std::ostringstream out;
  write_csv(out, r, {{"seed", 7}});
  const std::string s = out.str();
  CHECK(s.find("# seed=7\n") != std::string::npos);
  CHECK(s.find("ratio,<=,1/3,0.33333333333333331,1/2,0.5,true,true\n") != std::string::npos);
  CHECK(s.find("est,info,,2.5,,0,false,true\n") != std::string::npos);
  CHECK(parse_report_format("json") == ReportFormat::json);
  CHECK_THROWS(parse_report_format("xml"));
}

TEST_CASE("report json round-trip") {
  const auto p = ConstructionParams::make(3, 10, 0.5, 10, 2, 0.3, 3);
  const FullConstruction f = full_construction(p);
  const VerificationReport r = density_report(f.hypergraph, f.info);
  const VerificationReport back = report_from_json(to_json(r));
  CHECK(to_json(back) == to_json(r));
  REQUIRE(back.comparisons.size() == r.comparisons.size());
  for (std::size_t i = 0; i < r.comparisons.size(); ++i) CHECK(back.comparisons[i].measured == r.comparisons[i].measured);

  std::ostringstream a, b;
  emit_report(a, r, ReportFormat::csv, to_json(p));
  emit_report(b, density_report(full_construction(p).hypergraph, f.info), ReportFormat::csv, to_json(p));
  CHECK(a.str() == b.str());
}

TEST_CASE("params json") {
  ConstructionParams p = ConstructionParams::make(3, 10, 0.5, 10, 2, 0.3, 3);
  ConstructionParams q;
  merge_json(q, to_json(p));
  CHECK(to_json(q) == to_json(p));
  CHECK_THROWS(merge_json(q, nlohmann::json{{"nonsense", 1}}));

  ConstructionParams d;
  merge_json(d, nlohmann::json{{"epsilon", 0.4}, {"k", 16}, {"r", 4}});
  CHECK(d.theta == doctest::Approx(0.1));
  CHECK(d.u == 2);
  CHECK(d.pattern_cap == 64);

  DrcParams dp;
  merge_json(dp, nlohmann::json{{"a", 9}, {"codegree_threshold", 3}});
  CHECK(dp.a == 9);
  CHECK(dp.codegree_threshold == 3);

  const auto p2 = ConstructionParams::make(3, 10, 0.5, 10, 2, 0.3, 3);
  const FullConstruction f = full_construction(p2);
  CHECK(to_json(info_from_json(to_json(f.info))) == to_json(f.info));
}

TEST_CASE("embedding json") {
  const Embedding e{{4, 1, 7}, {Role::core, Role::core, Role::subdivision}, {{1, 4, 7}}};
  const Embedding back = embedding_from_json(to_json(e));
  CHECK(back.host == e.host);
  CHECK(back.roles == e.roles);
  CHECK(back.host_edges == e.host_edges);
}
