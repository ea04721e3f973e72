#include "glrusim/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace glrusim {

namespace {

double parse_double(const std::string& field, const char* what) {
  try {
    std::size_t used = 0;
    const double value = std::stod(field, &used);
    if (used != field.size()) throw std::invalid_argument(field);
    return value;
  } catch (const std::exception&) {
    throw std::runtime_error(std::string("csv: bad ") + what + " value '" + field + "'");
  }
}

std::uint64_t parse_u64(const std::string& field, const char* what) {
  try {
    std::size_t used = 0;
    const unsigned long long value = std::stoull(field, &used);
    if (used != field.size()) throw std::invalid_argument(field);
    return value;
  } catch (const std::exception&) {
    throw std::runtime_error(std::string("csv: bad ") + what + " value '" + field + "'");
  }
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("csv: cannot open " + path);
  return in;
}

void expect_header(std::istream& in, const std::string& want, const std::string& path) {
  std::string line;
  if (!std::getline(in, line) || line != want)
    throw std::runtime_error("csv: " + path + " missing header '" + want + "'");
}

}  // namespace

std::string format_exact(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string format_metric(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

void catalog_to_csv(const FileCatalog& catalog, std::ostream& out) {
  out << "rank,q,chunks,length_s\n";
  for (std::size_t i = 0; i < catalog.n_files(); ++i) {
    out << (i + 1) << ',' << format_exact(catalog.popularity[i]) << ','
        << catalog.chunks[i] << ',';
    if (!catalog.video_length_s.empty()) out << format_exact(catalog.video_length_s[i]);
    out << '\n';
  }
}

void save_catalog_csv(const FileCatalog& catalog, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("csv: cannot write " + path);
  catalog_to_csv(catalog, out);
}

FileCatalog load_catalog_csv(const std::string& path) {
  std::ifstream in = open_input(path);
  expect_header(in, "rank,q,chunks,length_s", path);
  FileCatalog catalog;
  std::string line;
  std::size_t expected_rank = 1;
  bool any_length = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 4) throw std::runtime_error("csv: " + path + " bad row '" + line + "'");
    if (parse_u64(fields[0], "rank") != expected_rank)
      throw std::runtime_error("csv: " + path + " ranks must run 1..N in order");
    ++expected_rank;
    catalog.popularity.push_back(parse_double(fields[1], "q"));
    catalog.chunks.push_back(static_cast<std::uint32_t>(parse_u64(fields[2], "chunks")));
    if (!fields[3].empty()) {
      any_length = true;
      catalog.video_length_s.push_back(parse_double(fields[3], "length_s"));
    } else {
      catalog.video_length_s.push_back(0.0);
    }
  }
  if (!any_length) {
    catalog.video_length_s.clear();
  } else if (catalog.video_length_s.size() != catalog.popularity.size() ||
             std::any_of(catalog.video_length_s.begin(), catalog.video_length_s.end(),
                         [](double len) { return !(len > 0.0); })) {
    throw std::runtime_error("csv: " + path + " mixes empty and non-empty length_s");
  }
  return catalog;
}

void trace_to_csv(const RequestTrace& trace, std::ostream& out) {
  out << "t,file_id\n";
  for (const RequestEvent& ev : trace.events) {
    out << format_exact(ev.time) << ',' << ev.file << '\n';
  }
}

void save_trace_csv(const RequestTrace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("csv: cannot write " + path);
  trace_to_csv(trace, out);
}

RequestTrace load_trace_csv(const std::string& path, double total_rate) {
  std::ifstream in = open_input(path);
  expect_header(in, "t,file_id", path);
  RequestTrace trace;
  trace.total_rate = total_rate;
  std::string line;
  double last = 0.0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 2) throw std::runtime_error("csv: " + path + " bad row '" + line + "'");
    RequestEvent ev;
    ev.time = parse_double(fields[0], "t");
    ev.file = static_cast<FileId>(parse_u64(fields[1], "file_id"));
    if (!trace.events.empty() && ev.time <= last)
      throw std::runtime_error("csv: " + path + " times must increase strictly");
    last = ev.time;
    trace.events.push_back(ev);
  }
  if (trace.total_rate <= 0.0 && trace.events.size() > 1) {
    trace.total_rate = static_cast<double>(trace.events.size()) / last;
  }
  return trace;
}

}  // namespace glrusim
