#pragma once

#include "dsgc/learn/config.hpp"
#include "dsgc/learn/gcn.hpp"
#include "dsgc/learn/mlp.hpp"

#include <filesystem>

namespace dsgc {

/// `<prefix>.<tensor>.smtx` per weight block plus `<prefix>.json` holding the
/// training configuration and the number of epochs run.
void save_mlp(const std::filesystem::path& prefix, const MlpParams& p, const TrainConfig& cfg, std::size_t epochs_run);
MlpParams load_mlp(const std::filesystem::path& prefix, TrainConfig* cfg = nullptr);

void save_gcn(const std::filesystem::path& prefix, const GcnParams& p, const TrainConfig& cfg, std::size_t epochs_run);
GcnParams load_gcn(const std::filesystem::path& prefix, TrainConfig* cfg = nullptr);

}  // namespace dsgc
