#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "glrusim/catalog.hpp"
#include "glrusim/workload.hpp"

namespace glrusim {

// Shortest shortest-round-trip formatting for doubles (%.17g); exact enough
// to reload traces and catalogs bit-identically.
std::string format_exact(double value);
// Readable formatting for derived metrics (%.12g).
std::string format_metric(double value);

std::vector<std::string> split_csv_line(const std::string& line);

// Header: rank,q,chunks,length_s. The length field is empty for catalogs
// that were not built from video lengths.
void catalog_to_csv(const FileCatalog& catalog, std::ostream& out);
void save_catalog_csv(const FileCatalog& catalog, const std::string& path);
FileCatalog load_catalog_csv(const std::string& path);

// Header: t,file_id. File ids are 0-based ranks (rank - 1).
void trace_to_csv(const RequestTrace& trace, std::ostream& out);
void save_trace_csv(const RequestTrace& trace, const std::string& path);
RequestTrace load_trace_csv(const std::string& path, double total_rate = 0.0);

}  // namespace glrusim
