#include "idnc/trace.hpp"

#include <fstream>
#include <sstream>

#include "idnc/errors.hpp"

namespace idnc {

namespace {

std::string trim(const std::string& s) {
  auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(const std::string& path, int line,
                       const std::string& what) {
  std::ostringstream os;
  os << path << ":" << line << ": " << what;
  throw ConfigError(os.str());
}

}  // namespace

ImportanceTrace load_trace(const std::string& path, int block_size) {
  if (block_size < 1) throw ConfigError("block size must be >= 1");
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open trace file: " + path);

  ImportanceTrace trace;
  trace.block_size = block_size;

  std::string line;
  int line_no = 0;
  bool saw_header = false;
  std::vector<int> ids;
  std::vector<double> values;

  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (!saw_header) {
      if (t != "packet_id,importance") {
        fail(path, line_no, "expected header 'packet_id,importance'");
      }
      saw_header = true;
      continue;
    }
    auto comma = t.find(',');
    if (comma == std::string::npos) fail(path, line_no, "expected two fields");
    int id;
    double importance;
    try {
      std::size_t used;
      id = std::stoi(trim(t.substr(0, comma)), &used);
      importance = std::stod(trim(t.substr(comma + 1)));
    } catch (const std::exception&) {
      fail(path, line_no, "malformed row");
    }
    if (importance < 0.0) fail(path, line_no, "negative importance");
    ids.push_back(id);
    values.push_back(importance);
    if (static_cast<int>(values.size()) == block_size) {
      trace.block_packet_ids.push_back(std::move(ids));
      trace.blocks.push_back(std::move(values));
      ids.clear();
      values.clear();
    }
  }
  if (!saw_header) fail(path, line_no, "missing header row");
  if (!values.empty()) {
    fail(path, line_no, "trailing block shorter than the block size");
  }
  if (trace.blocks.empty()) fail(path, line_no, "trace has no complete block");
  return trace;
}

}  // namespace idnc
