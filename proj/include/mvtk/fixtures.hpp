#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "mvtk/centralizer.hpp"
#include "mvtk/orbital.hpp"
#include "mvtk/preproj.hpp"

namespace mvtk::fixtures {

using Json = nlohmann::json;

#ifdef MVTK_FIXTURE_DIR
inline std::filesystem::path default_dir() { return MVTK_FIXTURE_DIR; }
#else
inline std::filesystem::path default_dir() { return "fixtures"; }
#endif

inline Json load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open fixture " + file.string());
  return Json::parse(in);
}

inline Json load(const std::string& name, const std::filesystem::path& dir) { return load(dir / (name + ".json")); }

// Numbers, or expressions in the module parameters.
class Evaluator {
 public:
  Evaluator(const std::vector<std::string>& params, std::vector<Rational> values)
      : ring_(make_ring(params.empty() ? std::vector<std::string>{"_"} : params)), values_(std::move(values)) {
    values_.resize(ring_->size(), Rational(0));
  }

  Rational operator()(const Json& x) const {
    if (x.is_number_integer()) return Rational(x.get<long>());
    if (x.is_string()) return parse_poly(x.get<std::string>(), ring_).evaluate(values_);
    throw std::invalid_argument("fixture entry must be an integer or an expression: " + x.dump());
  }

  std::vector<Rational> vector(const Json& v) const {
    std::vector<Rational> out;
    for (auto& x : v) out.push_back((*this)(x));
    return out;
  }

 private:
  RingPtr ring_;
  std::vector<Rational> values_;
};

struct ModuleFixture {
  QuiverRep module;
  FiltrationCertificate certificate;
  LusztigDatum datum;
  Tableau tableau;
};

inline std::vector<std::string> params_of(const Json& j) {
  return j.value("params", std::vector<std::string>{});
}

inline ModuleFixture module(const Json& j, const std::vector<Rational>& values = {}) {
  int m = j.at("m").get<int>();
  Evaluator ev(params_of(j), values);
  QuiverRep M(m, j.at("dims").get<std::vector<int>>());
  for (auto& [key, rows] : j.at("arrows").items()) {
    auto sep = key.find("->");
    Arrow h{std::stoi(key.substr(0, sep)), std::stoi(key.substr(sep + 2))};
    QMatrix a(rows.size(), rows.at(0).size(), Rational(0));
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < rows[r].size(); ++c) a(r, c) = ev(rows[r][c]);
    M.set(h, std::move(a));
  }
  FiltrationCertificate cert;
  for (auto& L : j.value("certificate", Json::array())) {
    FiltrationLayer layer;
    auto root = L.at("root").get<std::vector<int>>();
    layer.root = {root.at(0), root.at(1)};
    layer.multiplicity = L.at("mult").get<long>();
    for (auto& vs : L.at("span")) {
      std::vector<std::vector<Rational>> span;
      for (auto& v : vs) span.push_back(ev.vector(v));
      layer.span.push_back(std::move(span));
    }
    cert.layers.push_back(std::move(layer));
  }
  return {std::move(M), std::move(cert), j.at("lusztig_datum").get<LusztigDatum>(),
          Tableau(j.at("tableau").get<std::vector<std::vector<int>>>(), m)};
}

inline Tableau tableau(const Json& j, int m) { return Tableau(j.at("tableau").get<std::vector<std::vector<int>>>(), m); }

inline std::vector<MultiPoly> polys(const Json& list, const RingPtr& ring) {
  std::vector<MultiPoly> out;
  for (auto& s : list) out.push_back(parse_poly(s.get<std::string>(), ring));
  return out;
}

// Ideal generators in a ring whose variables follow the fixture's list.
inline std::vector<MultiPoly> ideal(const Json& j, const RingPtr& ring) {
  auto names = j.at("variables").get<std::vector<std::string>>();
  if (names != ring->names()) throw std::invalid_argument("fixture variables differ from the chart coordinates");
  return polys(j.at("generators"), ring);
}

inline MultiPoly alpha_poly(const std::string& s, int m) { return parse_poly(s, alpha_ring(m)); }

// A polynomial in n with rational coefficients, evaluated at an integer.
inline Rational poly_in_n(const std::string& s, long n) {
  auto R = make_ring(std::vector<std::string>{"n"});
  return parse_poly(s, R).evaluate({Rational(n)});
}

inline std::vector<Sequence> sequences(const Json& list) {
  std::vector<Sequence> out;
  for (auto& s : list) out.push_back(s.get<Sequence>());
  return out;
}

}  // namespace mvtk::fixtures
