#include <doctest.h>

#include <regex>
#include <sstream>

#include "corraudit/error.hpp"
#include "corraudit/plot.hpp"
#include "corraudit/reference_data.hpp"

using namespace corraudit;

namespace {

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

std::vector<std::string> band_points(const std::string& svg) {
  const std::regex re("class=\"band\"[^>]*points=\"([^\"]*)\"");
  std::smatch m;
  if (!std::regex_search(svg, m, re)) return {};
  std::vector<std::string> pts;
  std::istringstream in(m[1].str());
  for (std::string p; in >> p;) pts.push_back(p);
  return pts;
}

}  // namespace

TEST_SUITE("plot") {
  TEST_CASE("mtcars mpg against disp") {
    const auto ds = load_embedded("mtcars");
    const std::string svg = render_plot(ds, {"disp", "mpg"});
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("width=\"640\" height=\"480\"") != std::string::npos);
    CHECK(svg.find("r = -0.85") != std::string::npos);
    CHECK(count(svg, "<circle ") == 32);
    CHECK(count(svg, "class=\"fit\"") == 1);
    CHECK(band_points(svg).size() == 2 * 65);
    CHECK(svg == render_plot(ds, {"disp", "mpg"}));
  }

  TEST_CASE("collinear data has a zero-width band") {
    Eigen::MatrixXd v(4, 2);
    v << 1, 3, 2, 5, 3, 7, 4, 9;
    const std::string svg = render_plot(Dataset("line", {"x", "y"}, v), {"x", "y"});
    const auto pts = band_points(svg);
    REQUIRE(pts.size() == 130);
    for (std::size_t i = 0; i < 65; ++i) CHECK(pts[i] == pts[pts.size() - 1 - i]);
    CHECK(svg.find("r = 1.00") != std::string::npos);
  }

  TEST_CASE("options and errors") {
    const auto ds = load_embedded("iris");
    PlotSpec spec{"petal_width", "petal_length"};
    spec.show_band = false;
    spec.width = 300;
    spec.height = 200;
    const std::string svg = render_plot(ds, spec);
    CHECK(svg.find("class=\"band\"") == std::string::npos);
    CHECK(svg.find("width=\"300\" height=\"200\"") != std::string::npos);
    CHECK(count(svg, "<circle ") == 150);

    spec.width = 99;
    CHECK_THROWS_AS(render_plot(ds, spec), ConfigError);
    CHECK_THROWS_AS(render_plot(ds, {"nope", "petal_length"}), DataError);

    Eigen::MatrixXd v(3, 2);
    v << 1, 1, 1, 2, 1, 3;
    CHECK_THROWS_AS(render_plot(Dataset("c", {"x", "y"}, v), {"x", "y"}), NumericError);
  }

  TEST_CASE("labels are escaped") {
    Eigen::MatrixXd v(3, 2);
    v << 1, 1, 2, 3, 3, 2;
    const std::string svg = render_plot(Dataset("e", {"a<b", "c&d"}, v), {"a<b", "c&d"});
    CHECK(svg.find("a&lt;b") != std::string::npos);
    CHECK(svg.find("c&amp;d") != std::string::npos);
    CHECK(svg.find("a<b") == std::string::npos);
  }
}
