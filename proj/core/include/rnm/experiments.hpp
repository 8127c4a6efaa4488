#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rnm/decomposition.hpp"
#include "rnm/field_grid.hpp"
#include "rnm/kernel.hpp"
#include "rnm/ward.hpp"

namespace rnm {

enum class Oracle { ClosedForm, CrossQuadrature, ReferenceValue };
std::string to_string(Oracle o);

struct SweepRow {
  std::string parameter;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  Oracle oracle = Oracle::ClosedForm;
  std::string note;
};

struct SweepReport {
  std::string name;
  std::vector<SweepRow> rows;

  bool pass() const;
};

void write_report_json(std::ostream& os, const SweepReport& r, const std::string& resolved_config = "");

/// Limiting kernel at a non-degenerate singularity: the Mittag-Leffler series
/// when Q0 is radial, else the degree-N Gram truncation of e^{-Q0(tau0 z)}.
KernelRep limiting_kernel(const CanonicalDecomposition& dec, double radius = 6.0, int gram_degree = 48);

struct DiskGrid {
  double radius = 1.2;
  int points = 25;  ///< nodes per axis on [-radius, radius]^2, restricted to the disk
};

/// Nodes of a DiskGrid.
std::vector<Complex> disk_nodes(const DiskGrid& g);

/// sup |R_n - R_0| and sup |L_n - L_0| e^{-Q0(tau0 z)} on the disk for each n,
/// with monotone-decrease and final-size verdicts.
SweepReport universality_sweep(const Potential& p, const std::vector<int>& n_list, const DiskGrid& grid = {});

/// e(x) = |R_0(x) / dd-bar[Q0(tau0 x)] - 1| on the positive axis, its decay
/// verdicts, and the polynomial bound R_0(x) <= C (1 + x^{4k-2}) with C fitted
/// at the smallest radius.
SweepReport asymptotic_ratio_table(const KernelRep& k, const CanonicalDecomposition& dec,
                                   const std::vector<double>& radii);

/// r_n n^{1/2k} / tau0 for each n and the log-log slope of |ratio - 1|.
SweepReport scale_convergence(const Potential& p, const std::vector<int>& n_list);

enum class Quantity { R0, Rn, Berezin, WardResidual };
std::string to_string(Quantity q);

struct FieldOptions {
  Complex root;     ///< Berezin root
  QuadSpec quad;    ///< Ward residual settings
  std::string kernel_label;
  std::string potential_label;
};

/// Evaluates the quantity on every node. R0 and Rn both evaluate R of the kernel given.
FieldGrid field_grid(const KernelRep& k, Quantity q, const GridSpec& grid, const CanonicalDecomposition* dec,
                     const FieldOptions& opts = {});

/// Q0 = |z|^4 - |z|^2 Re(z^2) / 2, the anisotropic homogeneous example.
Potential figure1_potential();
/// R0 of the Gram truncation for figure1_potential().
FieldGrid figure1_grid(const GridSpec& grid, int gram_degree = 48);
/// Berezin kernel of Q0 = |z|^4 rooted at `root`.
FieldGrid figure2_grid(const GridSpec& grid, Complex root);

}  // namespace rnm
