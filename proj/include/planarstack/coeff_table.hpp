#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "planarstack/stack.hpp"

namespace planarstack {

// Fresnel coefficients sampled on a rectangular (frequency, k) grid,
// usable as an opaque coefficient source. Interpolation is bilinear in
// (log frequency, k); queries outside the grid raise CoverageError
// rather than extrapolating. Separate grids are kept per frequency
// axis (real / imaginary) and polarization.
class CoeffTable : public CoeffSource {
 public:
  struct Grid {
    bool imaginary_axis = true;
    Polarization q = Polarization::s;
    std::vector<double> freq;  // rad/s, strictly increasing
    std::vector<double> k;     // 1/m, strictly increasing
    std::vector<RawCoeffs> values;  // freq-major, freq.size()*k.size()
    bool has_backward = true;
  };

  CoeffTable(std::vector<Grid> grids, std::string name);

  RawCoeffs eval(const TransverseMode& mode) const override;
  std::string describe() const override { return name_; }

  bool has_backward() const;
  const std::vector<Grid>& grids() const { return grids_; }
  const Grid* find_grid(bool imaginary_axis, Polarization q) const;

 private:
  std::vector<Grid> grids_;
  std::string name_;
};

// CSV schema:
//   freq_type,freq_rad_s,k_per_m,pol,re_r_fwd,im_r_fwd,re_r_bwd,im_r_bwd,
//   re_t_fwd,im_t_fwd,re_t_bwd,im_t_bwd
// with freq_type in {real, imag} and pol in {p, s}. The four backward
// columns may be omitted (8-column rows); the loader notes the fill on
// stderr and evaluation reconstructs t_bwd from the transmission
// symmetry and r_bwd from the symmetric-stack reading.
std::shared_ptr<CoeffTable> load_coeff_table_csv(const std::string& path);
std::shared_ptr<CoeffTable> parse_coeff_table_csv(std::istream& in,
                                                  const std::string& name);
void write_coeff_table_csv(std::ostream& out, const CoeffTable& table);
void write_coeff_table_csv(const std::string& path, const CoeffTable& table);

// Evaluates a stack over the product grid freqs x ks (one grid per
// polarization on the chosen axis) and packs the results into a table.
std::shared_ptr<CoeffTable> sample_stack_coefficients(
    const StackExpr& stack, bool imaginary_axis,
    const std::vector<double>& freqs, const std::vector<double>& ks,
    const EvalOptions& opts = {}, const std::string& name = "sampled");

}  // namespace planarstack
