#ifndef DYNK_STREAM_IO_HPP
#define DYNK_STREAM_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include "dynk/hierarchy.hpp"
#include "dynk/metric_space.hpp"

namespace dynk {

struct StreamEvent {
  UpdateKind kind;
  PointId id = 0;
  double weight = 1.0;
  std::vector<double> coords;  // empty in matrix mode and for deletions
};

// Parsed stream file: optional `matrix <n>` header followed by n rows,
// optional `metric euclidean|l1` header (coordinate mode), then one
// `insert <id> <weight> [coords...]` or `delete <id>` per line. Lines
// starting with `#` are comments.
struct StreamData {
  std::optional<std::size_t> matrix_n;
  std::vector<double> matrix;  // row-major when matrix_n is set
  MetricKind metric = MetricKind::euclidean;
  std::vector<StreamEvent> events;
};

StreamData parse_stream_file(const std::string& path);
StreamData parse_stream_text(const std::string& text);

// Space configured for the stream's distance source (no events applied yet).
WeightedMetricSpace make_space(const StreamData& data);

// Applies one event to the space.
void apply_event(WeightedMetricSpace& space, const StreamEvent& ev);

}  // namespace dynk

#endif  // DYNK_STREAM_IO_HPP
