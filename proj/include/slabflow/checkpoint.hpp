#pragma once

#include <string>

#include "slabflow/initial_data.hpp"
#include "slabflow/state.hpp"

namespace slabflow {

/// Directory layout: manifest.json (grid, t, params, array name -> shape ->
/// byte offset, format version) and arrays.bin (little-endian float64,
/// row-major [n3][n2][n1], in manifest order).
inline constexpr int kCheckpointVersion = 1;

class CheckpointError : public SlabError {
 public:
  using SlabError::SlabError;
};

void save_checkpoint(const FlowState& s, const EosParams& p, const std::string& dir);
void save_checkpoint(const WellPreparedData& d, const std::string& dir);

struct LoadedState {
  FlowState state;
  EosParams params;
};

/// Throws CheckpointError on version, kind or length mismatch; nothing partial is returned.
LoadedState load_state_checkpoint(const std::string& dir);
WellPreparedData load_data_checkpoint(const std::string& dir);

}  // namespace slabflow
