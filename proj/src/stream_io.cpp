#include "dynk/stream_io.hpp"

#include <fstream>
#include <sstream>

#include "dynk/errors.hpp"

namespace dynk {

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
  fail(Errc::parse_error, "line " + std::to_string(line_no) + ": " + what);
}

bool significant(const std::string& line) {
  for (char c : line) {
    if (c == '#') return false;
    if (!std::isspace(static_cast<unsigned char>(c))) return true;
  }
  return false;
}

}  // namespace

StreamData parse_stream_text(const std::string& text) {
  StreamData out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::size_t matrix_rows_pending = 0;
  bool saw_event = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (!significant(line)) continue;
    std::istringstream ls(line);

    if (matrix_rows_pending > 0) {
      std::size_t n = *out.matrix_n;
      for (std::size_t c = 0; c < n; ++c) {
        double v;
        if (!(ls >> v)) parse_fail(line_no, "matrix row needs " + std::to_string(n) + " values");
        out.matrix.push_back(v);
      }
      std::string extra;
      if (ls >> extra) parse_fail(line_no, "trailing token '" + extra + "' in matrix row");
      --matrix_rows_pending;
      continue;
    }

    std::string op;
    ls >> op;
    if (op == "matrix") {
      if (saw_event || out.matrix_n) parse_fail(line_no, "matrix header must come first");
      long long n;
      if (!(ls >> n) || n <= 0) parse_fail(line_no, "matrix header needs a positive size");
      out.matrix_n = static_cast<std::size_t>(n);
      matrix_rows_pending = static_cast<std::size_t>(n);
    } else if (op == "metric") {
      if (saw_event || out.matrix_n) parse_fail(line_no, "metric header must precede events");
      std::string kind;
      ls >> kind;
      if (kind == "euclidean")
        out.metric = MetricKind::euclidean;
      else if (kind == "l1")
        out.metric = MetricKind::l1;
      else
        parse_fail(line_no, "unknown metric '" + kind + "'");
    } else if (op == "insert") {
      StreamEvent ev;
      ev.kind = UpdateKind::insert;
      if (!(ls >> ev.id)) parse_fail(line_no, "insert needs an id");
      if (!(ls >> ev.weight)) parse_fail(line_no, "insert needs a weight");
      double x;
      while (ls >> x) ev.coords.push_back(x);
      if (out.matrix_n && !ev.coords.empty())
        parse_fail(line_no, "coordinates are not allowed in matrix mode");
      if (!out.matrix_n && ev.coords.empty())
        parse_fail(line_no, "insert needs coordinates in coordinate mode");
      out.events.push_back(std::move(ev));
      saw_event = true;
    } else if (op == "delete") {
      StreamEvent ev;
      ev.kind = UpdateKind::erase;
      if (!(ls >> ev.id)) parse_fail(line_no, "delete needs an id");
      std::string extra;
      if (ls >> extra) parse_fail(line_no, "trailing token '" + extra + "' after delete");
      out.events.push_back(std::move(ev));
      saw_event = true;
    } else {
      parse_fail(line_no, "unknown operation '" + op + "'");
    }
  }
  if (matrix_rows_pending > 0)
    parse_fail(line_no, std::to_string(matrix_rows_pending) + " matrix rows missing");
  return out;
}

StreamData parse_stream_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(Errc::parse_error, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_stream_text(buf.str());
}

WeightedMetricSpace make_space(const StreamData& data) {
  if (data.matrix_n) return WeightedMetricSpace::from_matrix(data.matrix, *data.matrix_n);
  return WeightedMetricSpace(data.metric);
}

void apply_event(WeightedMetricSpace& space, const StreamEvent& ev) {
  if (ev.kind == UpdateKind::insert) {
    if (space.matrix_mode())
      space.insert(ev.id, ev.weight);
    else
      space.insert(ev.id, ev.weight, ev.coords);
  } else {
    space.erase(ev.id);
  }
}

}  // namespace dynk
