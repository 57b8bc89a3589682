#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "planarstack/constants.hpp"
#include "planarstack/document.hpp"
#include "planarstack/errors.hpp"
#include "planarstack/toml_lite.hpp"

using namespace planarstack;

TEST_SUITE("document") {

TEST_CASE("toml subset basics") {
  const toml::Table root = toml::parse(
      "# comment\n"
      "title = \"hi there\"\n"
      "count = 3\n"
      "flag = true\n"
      "pair = [1.5, -2e3]\n"
      "\n"
      "[alpha]\n"
      "x = 1_000.5\n"
      "[alpha.beta]\n"
      "y = inf\n"
      "[[items]]\n"
      "v = 1\n"
      "[[items]]\n"
      "v = 2\n",
      "test");
  CHECK(root.at("title").as_string("title") == "hi there");
  CHECK(root.at("count").as_number("count") == 3.0);
  CHECK(root.at("flag").as_bool("flag") == true);
  CHECK(root.at("pair").as_array("pair").size() == 2);
  CHECK(root.at("pair").as_array("pair")[1].as_number("pair") == -2e3);
  CHECK(root.find_table("alpha")->at("x").as_number("x") == 1000.5);
  CHECK(std::isinf(
      root.find_table("alpha")->find_table("beta")->at("y").as_number("y")));
  CHECK(root.find_array("items")->size() == 2);
  CHECK(root.find_array("items")->at(1).at("v").as_number("v") == 2.0);
}

TEST_CASE("toml errors carry line numbers") {
  try {
    toml::parse("a = 1\nb = \n", "bad");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
  CHECK_THROWS_AS(toml::parse("a = 1\na = 2\n", "dup"), ParseError);
  CHECK_THROWS_AS(toml::parse("[t]\nx = [1, \n", "open"), ParseError);
  CHECK_THROWS_AS(toml::parse("x == 3\n", "eq"), ParseError);
}

TEST_CASE("stack document with layers") {
  const StackDocument doc = parse_stack_document(
      "[stack]\n"
      "left = \"vacuum\"\n"
      "right = \"glass\"\n"
      "[materials.glass]\n"
      "model = \"constant\"\n"
      "eps = 2.25\n"
      "[materials.metal]\n"
      "model = \"drude\"\n"
      "omega_p = 1.4e16\n"
      "gamma = 5e13\n"
      "[[layers]]\n"
      "material = \"metal\"\n"
      "thickness = 20e-9\n",
      "test", "");
  CHECK(doc.ambient_left == "vacuum");
  CHECK(doc.ambient_right == "glass");

  const TransverseMode mode{Polarization::s, 0.0, Frequency::real(2e15)};
  const StackExpr manual = StackExpr::sequence({
      StackExpr::interface(Vacuum{}, DrudeMetal{1.4e16, 5e13}),
      StackExpr::slab(DrudeMetal{1.4e16, 5e13}, 20e-9),
      StackExpr::interface(DrudeMetal{1.4e16, 5e13}, ConstantIndex{2.25, 1.0}),
  });
  CHECK(std::abs(evaluate(doc.stack, mode).r_fwd -
                 evaluate(manual, mode).r_fwd) == 0.0);
}

TEST_CASE("empty layer list reduces to the bare ambient interface") {
  const StackDocument doc = parse_stack_document(
      "[stack]\n", "test", "");
  const TransverseMode mode{Polarization::p, 1e6, Frequency::real(1e15)};
  const FresnelSet fs = evaluate(doc.stack, mode);
  CHECK(fs.r_fwd == Complex(0.0));
  CHECK(fs.t_fwd == Complex(1.0));
}

TEST_CASE("stack document errors") {
  CHECK_THROWS_AS(parse_stack_document("x = 1\n", "test", ""), ParseError);
  // undeclared material
  CHECK_THROWS_AS(parse_stack_document(
                      "[stack]\n[[layers]]\nmaterial = \"nope\"\n"
                      "thickness = 1e-9\n",
                      "test", ""),
                  ParseError);
  // material and coefficients together
  CHECK_THROWS_AS(parse_stack_document(
                      "[stack]\n[materials.g]\nmodel = \"constant\"\n"
                      "eps = 2.0\n"
                      "[[layers]]\nmaterial = \"g\"\nthickness = 1e-9\n"
                      "coefficients = \"x.csv\"\n",
                      "test", ""),
                  ParseError);
  // non-passive constant
  CHECK_THROWS_AS(parse_stack_document(
                      "[stack]\n[materials.gain]\nmodel = \"constant\"\n"
                      "eps = [2.0, -0.1]\n"
                      "[[layers]]\nmaterial = \"gain\"\nthickness = 1e-9\n",
                      "test", ""),
                  ParseError);
}

TEST_CASE("cavity document") {
  const CavityDocument doc = parse_cavity_document(
      "[cavity]\n"
      "medium = \"vacuum\"\n"
      "d1 = 1e-6\n"
      "d2 = 2e-6\n"
      "[materials.gold]\n"
      "model = \"drude\"\n"
      "omega_p = 1.37e16\n"
      "gamma = 4e13\n"
      "[materials.glass]\n"
      "model = \"constant\"\n"
      "eps = 2.25\n"
      "[mirror1]\n"
      "backing = \"gold\"\n"
      "[mirror2]\n"
      "backing = \"gold\"\n"
      "[[mirror2.layers]]\n"
      "material = \"glass\"\n"
      "thickness = 50e-9\n"
      "[slab]\n"
      "[[slab.layers]]\n"
      "material = \"glass\"\n"
      "thickness = 200e-9\n"
      "[quadrature]\n"
      "tolerance = 1e-6\n",
      "test", "");
  CHECK(doc.config.d1 == 1e-6);
  CHECK(doc.config.d2 == 2e-6);
  CHECK(doc.config.quadrature.rel_tolerance == 1e-6);
  CHECK(doc.config.slab.left_medium() == MaterialModel{Vacuum{}});
  CHECK(doc.config.slab.right_medium() == MaterialModel{Vacuum{}});
  CHECK_NOTHROW(validate_cavity(doc.config));

  // omitted d2 means the two-body limit
  const CavityDocument two_body = parse_cavity_document(
      "[cavity]\n"
      "d1 = 1e-6\n"
      "[materials.pec]\n"
      "model = \"mirror\"\n"
      "[mirror1]\n"
      "backing = \"pec\"\n"
      "[slab]\n"
      "backing = \"pec\"\n",
      "test", "");
  CHECK(std::isinf(two_body.config.d2));
}

TEST_CASE("tabulated material loads from a CSV next to the document") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "planarstack_doc_test";
  fs::create_directories(dir);
  std::ofstream(dir / "eps.csv") << "1e13,4.0\n1e15,2.0\n1e17,1.0\n";

  const StackDocument doc = parse_stack_document(
      "[stack]\n"
      "[materials.film]\n"
      "model = \"tabulated\"\n"
      "file = \"eps.csv\"\n"
      "[[layers]]\n"
      "material = \"film\"\n"
      "thickness = 100e-9\n",
      "test", dir.string());
  const TransverseMode mode{Polarization::s, 0.0, Frequency::imaginary(1e15)};
  CHECK_NOTHROW(evaluate(doc.stack, mode));
  // tabulated dispersion has no real-axis values
  const TransverseMode real_mode{Polarization::s, 0.0, Frequency::real(1e15)};
  CHECK_THROWS_AS(evaluate(doc.stack, real_mode), EvaluationError);
  fs::remove_all(dir);
}

TEST_CASE("cavity document errors") {
  // missing mirror2 with finite d2
  CHECK_THROWS_AS(parse_cavity_document(
                      "[cavity]\nd1 = 1e-6\nd2 = 1e-6\n"
                      "[materials.pec]\nmodel = \"mirror\"\n"
                      "[mirror1]\nbacking = \"pec\"\n"
                      "[slab]\n",
                      "test", ""),
                  ParseError);
  CHECK_THROWS_AS(parse_cavity_document("[cavity]\n", "test", ""),
                  ParseError);
}

}  // TEST_SUITE
