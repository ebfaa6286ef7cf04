#pragma once

#include <string>
#include <vector>

namespace idnc {

// Packet-importance trace: CSV with header "packet_id,importance", '#'
// comments allowed, grouped into fixed-size blocks in file order.
struct ImportanceTrace {
  int block_size = 0;
  std::vector<std::vector<int>> block_packet_ids;
  std::vector<std::vector<double>> blocks;  // importances, row order

  int block_count() const { return static_cast<int>(blocks.size()); }
};

// Throws ConfigError with the offending line number on malformed rows,
// negative importances, or a trailing short block.
ImportanceTrace load_trace(const std::string& path, int block_size);

}  // namespace idnc
