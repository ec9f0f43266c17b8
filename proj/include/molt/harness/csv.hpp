#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "molt/geometry.hpp"
#include "molt/harness/studies.hpp"

namespace molt::harness {

/// `x,u` rows.
void write_snapshot_1d(const std::string& path, std::span<const double> x, std::span<const double> u);
/// `x,y,u` rows, one per domain node.
void write_snapshot_2d(const std::string& path, const Domain2D& dom, std::span<const double> u);

/// `resolution,error,order`.
void write_refinement(std::ostream& os, const RefinementReport& r);
/// `N,dd_error,dd_order,outflow_error,outflow_order,total_error,total_order`.
void write_decomp(std::ostream& os, const std::vector<DecompRow>& rows);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::vector<double> column(const std::string& name) const;
};

/// Reads a numeric CSV with one header line; "nan" cells are allowed.
CsvTable read_csv(const std::string& path);

}  // namespace molt::harness
