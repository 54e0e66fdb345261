#include "sortflow/dimacs.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "sortflow/error.hpp"

namespace sortflow {

namespace {

constexpr std::string_view kLabelPrefix = "c label ";

[[noreturn]] void syntax_error(std::size_t line_no, const std::string& what) {
  throw FlowError(ErrorCode::SyntaxError, "line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

Instance parse_dimacs(std::string_view text) {
  Instance inst;
  std::optional<std::int64_t> declared_arcs;
  std::optional<VertexId> source;
  std::optional<VertexId> sink;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (line.starts_with(kLabelPrefix)) {
      inst.label = std::string(line.substr(kLabelPrefix.size()));
      continue;
    }
    if (line.empty() || line.front() == 'c') continue;

    std::istringstream in{std::string(line)};
    char kind = 0;
    in >> kind;
    std::string trailing;
    switch (kind) {
      case 'p': {
        if (declared_arcs) {
          throw FlowError(ErrorCode::DuplicateProblemLine,
                          "line " + std::to_string(line_no) + ": second problem line");
        }
        std::string format;
        std::int64_t n = 0, m = 0;
        if (!(in >> format >> n >> m) || (in >> trailing)) syntax_error(line_no, "malformed problem line");
        if (format != "max") syntax_error(line_no, "expected 'p max', got 'p " + format + "'");
        if (n < 1 || m < 0 || n > std::numeric_limits<VertexId>::max()) {
          syntax_error(line_no, "bad vertex or arc count");
        }
        inst.vertex_count = static_cast<VertexId>(n);
        declared_arcs = m;
        break;
      }
      case 'n': {
        if (!declared_arcs) syntax_error(line_no, "node line before problem line");
        std::int64_t id = 0;
        std::string role;
        if (!(in >> id >> role) || (in >> trailing)) syntax_error(line_no, "malformed node line");
        if (id < 1 || id > inst.vertex_count) syntax_error(line_no, "node id out of range");
        if (role != "s" && role != "t") syntax_error(line_no, "node role must be s or t");
        auto& slot = role == "s" ? source : sink;
        if (slot) syntax_error(line_no, "duplicate '" + role + "' node line");
        slot = static_cast<VertexId>(id - 1);
        break;
      }
      case 'a': {
        if (!declared_arcs) syntax_error(line_no, "arc line before problem line");
        std::int64_t tail = 0, head = 0, cap = 0;
        if (!(in >> tail >> head >> cap) || (in >> trailing)) syntax_error(line_no, "malformed arc line");
        if (tail < 1 || tail > inst.vertex_count || head < 1 || head > inst.vertex_count) {
          syntax_error(line_no, "arc endpoint out of range");
        }
        if (cap < 0) syntax_error(line_no, "negative capacity");
        inst.arcs.push_back({static_cast<VertexId>(tail - 1), static_cast<VertexId>(head - 1), cap});
        break;
      }
      default:
        syntax_error(line_no, "unknown line type '" + std::string(1, kind) + "'");
    }
  }

  if (!declared_arcs) throw FlowError(ErrorCode::SyntaxError, "missing problem line");
  if (!source || !sink) throw FlowError(ErrorCode::MissingSourceOrSink, "need one 'n <id> s' and one 'n <id> t'");
  if (static_cast<std::int64_t>(inst.arcs.size()) != *declared_arcs) {
    throw FlowError(ErrorCode::ArcCountMismatch, "declared " + std::to_string(*declared_arcs) +
                                                     " arcs, found " + std::to_string(inst.arcs.size()));
  }
  inst.source = *source;
  inst.sink = *sink;
  return inst;
}

std::string write_dimacs(const Instance& inst) {
  std::string out;
  if (!inst.label.empty()) out += std::string(kLabelPrefix) + inst.label + "\n";
  out += "p max " + std::to_string(inst.vertex_count) + " " + std::to_string(inst.arcs.size()) + "\n";
  out += "n " + std::to_string(inst.source + 1) + " s\n";
  out += "n " + std::to_string(inst.sink + 1) + " t\n";
  for (const auto& arc : inst.arcs) {
    out += "a " + std::to_string(arc.tail + 1) + " " + std::to_string(arc.head + 1) + " " +
           std::to_string(arc.capacity) + "\n";
  }
  return out;
}

Instance read_dimacs_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_dimacs(buffer.str());
}

}  // namespace sortflow
