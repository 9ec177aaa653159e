#pragma once

#include "mcsp/ip_model.hpp"

#include <filesystem>
#include <iosfwd>

namespace mcsp {

enum class ModelFormat { lp, mps };

/// Writes a CPLEX-LP or classic fixed-column MPS document. LP output keeps
/// the model's variable names; MPS uses 8-character synthetic names
/// (V0000001.., R0000001..) as required by the fixed layout.
void export_model(const IpModel& model, ModelFormat format, std::ostream& out);

void export_model_file(const IpModel& model, ModelFormat format,
                       const std::filesystem::path& file);

/// Reads back the LP dialect emitted by export_model (Minimize / Subject To /
/// Bounds / Binaries / End, equality rows only).
IpModel import_lp(std::istream& in);

IpModel import_lp_file(const std::filesystem::path& file);

} // namespace mcsp
