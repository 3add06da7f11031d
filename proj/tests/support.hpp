#pragma once

#include "qevap/qevap.hpp"

namespace testing {

// Shared contexts and tables; built once per binary run.
inline const qevap::KernelContext& bose_ctx() {
  static const qevap::KernelContext ctx =
      qevap::make_context(-1.0, qevap::GasStatistics::Bose);
  return ctx;
}

inline const qevap::KernelContext& fermi_ctx() {
  static const qevap::KernelContext ctx =
      qevap::make_context(-1.0, qevap::GasStatistics::Fermi);
  return ctx;
}

inline const qevap::KernelContext& classical_ctx() {
  static const qevap::KernelContext ctx =
      qevap::make_context(-1.0, qevap::GasStatistics::Classical);
  return ctx;
}

inline const qevap::DispersionTable& bose_table() {
  static const qevap::DispersionTable table = qevap::build_dispersion_table(bose_ctx());
  return table;
}

}  // namespace testing
