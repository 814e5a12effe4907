#pragma once

// Unextendable product bases: validation, the bound-entangled state built from
// the orthocomplement, PPT checks over every bipartite cut, and the search for
// orthogonal product families inside T.

#include <optional>
#include <string>
#include <vector>

#include "ces/certify.hpp"
#include "ces/subspaces.hpp"
#include "ces/tensor.hpp"

namespace ces {

/// Product vectors given slot by slot.
struct ProductFamily {
  Dims dims;
  std::vector<std::vector<Vec>> members;  // members[s][r] is the factor at slot r
  std::string note;

  std::size_t size() const { return members.size(); }
  Ket ket(std::size_t s) const;
  /// max |<psi_s|psi_t> - delta_st|
  double orthonormality_error() const;
  bool orthonormal(double tol = kUnitTol) const { return orthonormality_error() <= tol; }
};

/// Checks factor counts and lengths against dims and that every member has unit norm.
ProductFamily make_product_family(Dims dims, std::vector<std::vector<Vec>> members, std::string note = {});

/// Fixture format: {"dims": [...], "vectors": [[slot factor, ...], ...], "note": "..."}.
/// A factor is a list of amplitudes; each amplitude is a number or a [re, im] pair.
ProductFamily parse_product_family(const std::string& json_text);
ProductFamily load_product_family(const std::string& path);

struct UpbOptions {
  double threshold = 1.0 - 1e-3;  // certified unextendable when the best overlap stays at or below this
  SeesawOptions seesaw{};
};

struct UpbValidation {
  long count = 0;
  long D = 0;
  double orthonormality_error = 0.0;
  bool span_full = false;  // orthocomplement is {0}: not a UPB candidate
  std::optional<double> best_value;
  std::optional<Ket> best_state;
  double threshold = 1.0 - 1e-3;
  bool unextendable = false;
};

/// Seesaw on I - P_B. Rejects families that are not orthonormal.
UpbValidation validate_upb(const ProductFamily& family, const UpbOptions& opts = {});

/// (I - P_B) / (D - d). Rejects non-orthonormal families and d >= D.
HermOp bbd_state(const ProductFamily& family);

struct CutResult {
  std::vector<int> slots;  // the transposed side E (0-based)
  double min_eigenvalue = 0.0;
};

struct PptReport {
  std::vector<CutResult> cuts;
  double min_eigenvalue = 0.0;
  double tol = 1e-8;
  bool ppt = false;
};

/// Proper nonempty cuts up to complement, one representative each: the smaller
/// side, or the side holding slot 0 when both halves have equal size.
std::vector<std::vector<int>> bipartite_cuts(const Dims& dims);

PptReport ppt_all_cuts(const HermOp& rho, double tol = 1e-8, const JacobiOptions& jacobi = {});

struct UpbAnalysis {
  UpbValidation validation;
  std::optional<HermOp> state;
  std::optional<long> state_rank;  // eigenvalues above 1e-8
  std::optional<PptReport> ppt;
  bool bound_entangled = false;
  std::string verdict;
};

/// validate_upb, then bbd_state and ppt_all_cuts when a state exists.
UpbAnalysis analyze_upb(const ProductFamily& family, const UpbOptions& opts = {}, double ppt_tol = 1e-8);

struct FSearchReport {
  std::vector<ExtendedComplex> grid;
  std::vector<std::vector<int>> families;  // maximal orthogonal families, as grid positions
  std::vector<int> largest;
  std::vector<UpbValidation> validations;  // one per entry of `families`
  bool any_unextendable = false;
};

/// Default grid: 0, +-1, +-i and infinity.
std::vector<ExtendedComplex> default_f_grid();

/// Builds the orthogonality graph of the normalized z^lambda over `grid`, lists
/// its maximal cliques (at most `max_families`) and validates each one.
FSearchReport upb_search_in_F(const Dims& dims, const std::vector<ExtendedComplex>& grid, const UpbOptions& opts = {},
                              double orth_tol = 1e-10, std::size_t max_families = 64);

}  // namespace ces
