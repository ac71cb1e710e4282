#include <iomanip>
#include <sstream>

#include "rotomo/tomography.hpp"

namespace rotomo {

std::string format_report(const Reconstruction& rec) {
  std::ostringstream out;
  out << std::setprecision(12);
  int flagged = 0;
  std::size_t longest = 0;
  for (const ElementDiagnostics& e : rec.elements) {
    flagged += e.truncated ? 1 : 0;
    longest = std::max(longest, e.chain.size());
  }
  out << "# reconstruction report\n";
  out << "method: " << rec.method << "\n";
  out << "block: k=" << rec.block.k() << " m=" << rec.block.m() << " j_min=" << rec.block.j_min()
      << " j_max=" << rec.block.j_max() << "\n";
  out << "sampling: n_t=" << rec.plan.n_t << " n_x=" << rec.plan.n_x << " n_periods=" << rec.plan.n_periods
      << " j_search_cap=" << rec.plan.j_search_cap << "\n";
  out << "trace: " << rec.block.trace().real() << "\n";
  out << "residual: " << rec.residual << "\n";
  out << "condition: " << rec.condition << "\n";
  out << "longest_chain: " << longest << "\n";
  out << "flagged_elements: " << flagged << "\n";
  out << "# diagonal: J1 rho\n";
  for (int J = rec.block.j_min(); J <= rec.block.j_max(); ++J) {
    out << "diag " << J << " " << rec.block(J, J).real() << "\n";
  }
  out << "# off-diagonal: J1 J2 re im | chain (J,dJ)... | flags\n";
  for (const ElementDiagnostics& e : rec.elements) {
    out << "offdiag " << e.j1 << " " << e.j2 << " " << e.value.real() << " " << e.value.imag() << " | chain";
    for (const ChainMember& c : e.chain) out << " (" << c.J << "," << c.dJ << ")";
    out << " |";
    if (e.truncated) {
      out << " contaminated-by-truncation neglected";
      for (const ChainMember& c : e.neglected) out << " (" << c.J << "," << c.dJ << ")";
    } else {
      out << " ok";
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace rotomo
