#include <cstdlib>
#include <sstream>

#include "doctest.h"
#include "shortsum/error.hpp"
#include "shortsum/report_io.hpp"

using namespace shortsum;

TEST_CASE("reals carry 17 significant digits") {
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(format_real(1.0) == "1");
  CHECK(format_real(1.0 / 3.0) == "0.33333333333333331");
  for (double v : {-2.5e-300, 6.02214076e23, 0.30685281944005469, 1e-5}) {
    CHECK(std::strtod(format_real(v).c_str(), nullptr) == v);
  }
  CHECK(format_real(1.0 / 0.0) == "inf");
}

TEST_CASE("scan report JSON round trip") {
  const Restriction restrict{IntervalSystem::parse("explicit:2-3,5-7", 0.125), 2};
  const auto r = scan_short(MultiplicativeFunction::liouville(), 10000, 50, 0.1, 25, 7, restrict,
                            {0.01, 0.1, 1.0 / 3.0});
  const std::string text = scan_report_to_json(r);
  const ScanReport back = scan_report_from_json(text);
  CHECK(back == r);
  CHECK(scan_report_to_json(back) == text);

  const auto plain = scan_short(MultiplicativeFunction::one(), 1000, 10, 0.5, 3, 1);
  CHECK(scan_report_from_json(scan_report_to_json(plain)) == plain);

  const auto canonical = IntervalSystem::canonical(0.12, 5000, 1.3e6, 3);
  ScanReport synthetic = plain;
  synthetic.params.restriction = Restriction{canonical, 0};
  CHECK(scan_report_from_json(scan_report_to_json(synthetic)) == synthetic);
}

TEST_CASE("malformed reports are format errors") {
  CHECK_THROWS_AS(scan_report_from_json("{"), FormatError);
  CHECK_THROWS_AS(scan_report_from_json("{}"), FormatError);
  CHECK_THROWS_AS(scan_report_from_json(R"({"params": 3})"), FormatError);
}

TEST_CASE("canonical JSON") {
  CHECK(canonical_json(R"({"a":0.1,"b":[1,2.5]})") ==
        "{\n  \"a\": 0.10000000000000001,\n  \"b\": [\n    1,\n    2.5\n  ]\n}\n");
  CHECK_THROWS_AS(canonical_json("nope"), FormatError);
}

TEST_CASE("CSV schemas") {
  std::ostringstream a, b, c, d;
  const auto r = scan_short(MultiplicativeFunction::one(), 1000, 10, 0.5, 2, 1);
  write_scan_csv(a, r);
  CHECK(a.str().rfind("x,short_avg,long_avg,diff\n", 0) == 0);
  write_correlation_csv(b, 1, 10, -0.4);
  CHECK(b.str() == "h,X,value\n1,10,-0.40000000000000002\n");
  write_sign_csv(c, 10, SignChanges{6, 10});
  CHECK(c.str() == "X,count,nonzero,density\n10,6,10,0.59999999999999998\n");
  SmoothScan s;
  s.records.push_back({100, 7, 3.5});
  write_smooth_csv(d, s);
  CHECK(d.str() == "x,count,expected\n100,7,3.5\n");
}

TEST_CASE("SVG output is standalone") {
  const std::vector<double> v{0.1, 0.2, 0.2, 0.5};
  const std::string h = svg_histogram(v, 4, "diffs <&>");
  CHECK(h.rfind("<svg", 0) == 0);
  CHECK(h.find("&lt;&amp;&gt;") != std::string::npos);
  CHECK(h.find("</svg>") != std::string::npos);
  const std::vector<std::pair<double, double>> pts{{0, 1}, {1, 1}, {2, 0.3}};
  CHECK(svg_curve(pts, "rho").find("<polyline") != std::string::npos);
  CHECK_THROWS_AS(svg_histogram(v, 0, "x"), UsageError);
}
