#include "planarstack/coeff_table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "planarstack/errors.hpp"

namespace planarstack {

namespace {

void check_axis(const std::vector<double>& v, const char* what) {
  if (v.size() < 2) {
    throw DomainError(std::string("coefficient grid needs >= 2 ") + what +
                      " samples");
  }
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (!(v[i] < v[i + 1])) {
      throw DomainError(std::string("coefficient grid ") + what +
                        " axis must be strictly increasing");
    }
  }
  if (!(v.front() > 0.0) && what[0] == 'f') {
    throw DomainError("coefficient grid frequencies must be positive");
  }
}

std::size_t cell_index(const std::vector<double>& axis, double x) {
  // axis.front() <= x <= axis.back() guaranteed by caller
  auto it = std::upper_bound(axis.begin(), axis.end(), x);
  std::size_t hi = static_cast<std::size_t>(it - axis.begin());
  if (hi == axis.size()) --hi;
  if (hi == 0) ++hi;
  return hi - 1;
}

}  // namespace

CoeffTable::CoeffTable(std::vector<Grid> grids, std::string name)
    : grids_(std::move(grids)), name_(std::move(name)) {
  if (grids_.empty()) {
    throw DomainError("coefficient table has no grids");
  }
  for (const auto& g : grids_) {
    check_axis(g.freq, "frequency");
    check_axis(g.k, "k");
    if (g.values.size() != g.freq.size() * g.k.size()) {
      throw DomainError("coefficient grid is not complete");
    }
  }
}

const CoeffTable::Grid* CoeffTable::find_grid(bool imaginary_axis,
                                              Polarization q) const {
  for (const auto& g : grids_) {
    if (g.imaginary_axis == imaginary_axis && g.q == q) return &g;
  }
  return nullptr;
}

bool CoeffTable::has_backward() const {
  for (const auto& g : grids_) {
    if (!g.has_backward) return false;
  }
  return true;
}

CoeffSource::RawCoeffs CoeffTable::eval(const TransverseMode& mode) const {
  const Grid* g = find_grid(mode.freq.is_imaginary(), mode.q);
  if (!g) {
    throw CoverageError(name_ + ": no data for the requested frequency axis "
                        "and polarization");
  }
  const double f = mode.freq.value();
  const double k = mode.k;
  if (f < g->freq.front() || f > g->freq.back() || k < g->k.front() ||
      k > g->k.back()) {
    throw CoverageError(name_ + ": mode outside the tabulated grid");
  }
  const std::size_t i = cell_index(g->freq, f);
  const std::size_t j = cell_index(g->k, k);
  const double lf0 = std::log(g->freq[i]);
  const double lf1 = std::log(g->freq[i + 1]);
  const double u = (std::log(f) - lf0) / (lf1 - lf0);
  const double v = (k - g->k[j]) / (g->k[j + 1] - g->k[j]);
  const std::size_t nk = g->k.size();
  const RawCoeffs& c00 = g->values[i * nk + j];
  const RawCoeffs& c01 = g->values[i * nk + j + 1];
  const RawCoeffs& c10 = g->values[(i + 1) * nk + j];
  const RawCoeffs& c11 = g->values[(i + 1) * nk + j + 1];
  auto lerp = [&](Complex a, Complex b, Complex c, Complex d) {
    return (1.0 - u) * ((1.0 - v) * a + v * b) + u * ((1.0 - v) * c + v * d);
  };
  RawCoeffs out;
  out.r_fwd = lerp(c00.r_fwd, c01.r_fwd, c10.r_fwd, c11.r_fwd);
  out.t_fwd = lerp(c00.t_fwd, c01.t_fwd, c10.t_fwd, c11.t_fwd);
  out.has_backward = g->has_backward;
  if (g->has_backward) {
    out.r_bwd = lerp(c00.r_bwd, c01.r_bwd, c10.r_bwd, c11.r_bwd);
    out.t_bwd = lerp(c00.t_bwd, c01.t_bwd, c10.t_bwd, c11.t_bwd);
  }
  return out;
}

namespace {

struct RowKey {
  bool imag;
  int pol;  // 0 = p, 1 = s
  friend bool operator<(const RowKey& a, const RowKey& b) {
    return std::tie(a.imag, a.pol) < std::tie(b.imag, b.pol);
  }
};

}  // namespace

std::shared_ptr<CoeffTable> parse_coeff_table_csv(std::istream& in,
                                                  const std::string& name) {
  struct Sample {
    double f, k;
    CoeffSource::RawCoeffs c;
  };
  std::map<RowKey, std::vector<Sample>> samples;
  bool any_missing_backward = false;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;

    std::vector<std::string> fields;
    std::string field;
    std::istringstream row(line);
    while (std::getline(row, field, ',')) {
      field.erase(0, field.find_first_not_of(" \t\r"));
      field.erase(field.find_last_not_of(" \t\r") + 1);
      fields.push_back(field);
    }
    if (lineno == 1 && !fields.empty() && fields[0] == "freq_type") continue;
    if (fields.size() != 8 && fields.size() != 12) {
      throw ParseError(name + ": expected 8 or 12 columns, got " +
                       std::to_string(fields.size()), lineno);
    }

    RowKey key;
    if (fields[0] == "real") key.imag = false;
    else if (fields[0] == "imag") key.imag = true;
    else throw ParseError(name + ": freq_type must be 'real' or 'imag'",
                          lineno, 1);
    if (fields[3] == "p") key.pol = 0;
    else if (fields[3] == "s") key.pol = 1;
    else throw ParseError(name + ": pol must be 'p' or 's'", lineno, 4);

    auto num = [&](std::size_t idx) {
      try {
        std::size_t used = 0;
        double v = std::stod(fields[idx], &used);
        if (used != fields[idx].size()) throw std::invalid_argument("trail");
        return v;
      } catch (const std::exception&) {
        throw ParseError(name + ": bad numeric field '" + fields[idx] + "'",
                         lineno, static_cast<int>(idx) + 1);
      }
    };

    Sample s;
    s.f = num(1);
    s.k = num(2);
    s.c.r_fwd = {num(4), num(5)};
    if (fields.size() == 12) {
      s.c.r_bwd = {num(6), num(7)};
      s.c.t_fwd = {num(8), num(9)};
      s.c.t_bwd = {num(10), num(11)};
      s.c.has_backward = true;
    } else {
      s.c.t_fwd = {num(6), num(7)};
      s.c.has_backward = false;
      any_missing_backward = true;
    }
    samples[key].push_back(s);
  }
  if (samples.empty()) {
    throw ParseError(name + ": no coefficient rows", lineno);
  }

  std::vector<CoeffTable::Grid> grids;
  for (auto& [key, rows] : samples) {
    CoeffTable::Grid g;
    g.imaginary_axis = key.imag;
    g.q = key.pol == 0 ? Polarization::p : Polarization::s;
    for (const auto& s : rows) {
      g.freq.push_back(s.f);
      g.k.push_back(s.k);
      g.has_backward = g.has_backward && s.c.has_backward;
    }
    std::sort(g.freq.begin(), g.freq.end());
    g.freq.erase(std::unique(g.freq.begin(), g.freq.end()), g.freq.end());
    std::sort(g.k.begin(), g.k.end());
    g.k.erase(std::unique(g.k.begin(), g.k.end()), g.k.end());
    g.values.assign(g.freq.size() * g.k.size(),
                    CoeffSource::RawCoeffs{{0, 0}, {0, 0}, {0, 0}, {0, 0},
                                           g.has_backward});
    std::vector<char> seen(g.values.size(), 0);
    for (const auto& s : rows) {
      const auto fi = std::lower_bound(g.freq.begin(), g.freq.end(), s.f) -
                      g.freq.begin();
      const auto ki = std::lower_bound(g.k.begin(), g.k.end(), s.k) -
                      g.k.begin();
      const std::size_t idx = static_cast<std::size_t>(fi) * g.k.size() +
                              static_cast<std::size_t>(ki);
      g.values[idx] = s.c;
      g.values[idx].has_backward = g.has_backward;
      seen[idx] = 1;
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
      throw ParseError(name + ": rows do not form a complete grid", lineno);
    }
    grids.push_back(std::move(g));
  }

  if (any_missing_backward) {
    std::cerr << "note: " << name
              << ": backward coefficients absent; they will be filled from "
                 "the transmission symmetry\n";
  }
  return std::make_shared<CoeffTable>(std::move(grids), name);
}

std::shared_ptr<CoeffTable> load_coeff_table_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open coefficient table '" + path + "'", 0);
  }
  return parse_coeff_table_csv(in, path);
}

void write_coeff_table_csv(std::ostream& out, const CoeffTable& table) {
  out << "freq_type,freq_rad_s,k_per_m,pol,re_r_fwd,im_r_fwd,re_r_bwd,"
         "im_r_bwd,re_t_fwd,im_t_fwd,re_t_bwd,im_t_bwd\n";
  char buf[32];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
  };
  for (const auto& g : table.grids()) {
    for (std::size_t i = 0; i < g.freq.size(); ++i) {
      for (std::size_t j = 0; j < g.k.size(); ++j) {
        const auto& c = g.values[i * g.k.size() + j];
        out << (g.imaginary_axis ? "imag," : "real,");
        put(g.freq[i]);
        out << ',';
        put(g.k[j]);
        out << ',' << (g.q == Polarization::p ? 'p' : 's') << ',';
        put(c.r_fwd.real()); out << ','; put(c.r_fwd.imag()); out << ',';
        put(c.r_bwd.real()); out << ','; put(c.r_bwd.imag()); out << ',';
        put(c.t_fwd.real()); out << ','; put(c.t_fwd.imag()); out << ',';
        put(c.t_bwd.real()); out << ','; put(c.t_bwd.imag());
        out << '\n';
      }
    }
  }
}

void write_coeff_table_csv(const std::string& path, const CoeffTable& table) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot write coefficient table '" + path + "'");
  }
  write_coeff_table_csv(out, table);
}

std::shared_ptr<CoeffTable> sample_stack_coefficients(
    const StackExpr& stack, bool imaginary_axis,
    const std::vector<double>& freqs, const std::vector<double>& ks,
    const EvalOptions& opts, const std::string& name) {
  std::vector<CoeffTable::Grid> grids;
  for (Polarization q : {Polarization::p, Polarization::s}) {
    CoeffTable::Grid g;
    g.imaginary_axis = imaginary_axis;
    g.q = q;
    g.freq = freqs;
    g.k = ks;
    g.values.reserve(freqs.size() * ks.size());
    for (double f : freqs) {
      const Frequency freq = imaginary_axis ? Frequency::imaginary(f)
                                            : Frequency::real(f);
      for (double k : ks) {
        const FresnelSet fs = evaluate(stack, TransverseMode{q, k, freq}, opts);
        g.values.push_back({fs.r_fwd, fs.r_bwd, fs.t_fwd, fs.t_bwd, true});
      }
    }
    grids.push_back(std::move(g));
  }
  return std::make_shared<CoeffTable>(std::move(grids), name);
}

}  // namespace planarstack
