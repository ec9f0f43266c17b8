#include "molt/harness/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace molt::harness {

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write '" + path + "'");
  return os;
}

}  // namespace

void write_snapshot_1d(const std::string& path, std::span<const double> x, std::span<const double> u) {
  auto os = open_out(path);
  os << "x,u\n";
  for (std::size_t i = 0; i < x.size(); ++i) os << num(x[i]) << ',' << num(u[i]) << '\n';
}

void write_snapshot_2d(const std::string& path, const Domain2D& dom, std::span<const double> u) {
  auto os = open_out(path);
  os << "x,y,u\n";
  for (std::size_t i = 0; i < dom.nodes.size(); ++i)
    os << num(dom.nodes[i].x) << ',' << num(dom.nodes[i].y) << ',' << num(u[i]) << '\n';
}

void write_refinement(std::ostream& os, const RefinementReport& r) {
  os << "resolution,error,order\n";
  for (const auto& row : r.rows) os << num(row.resolution) << ',' << num(row.error) << ',' << num(row.order) << '\n';
}

void write_decomp(std::ostream& os, const std::vector<DecompRow>& rows) {
  os << "N,dd_error,dd_order,outflow_error,outflow_order,total_error,total_order\n";
  for (const auto& r : rows)
    os << r.N << ',' << num(r.dd_error) << ',' << num(r.dd_order) << ',' << num(r.outflow_error) << ','
       << num(r.outflow_order) << ',' << num(r.total_error) << ',' << num(r.total_order) << '\n';
}

std::vector<double> CsvTable::column(const std::string& name) const {
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] != name) continue;
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.at(c));
    return out;
  }
  throw std::out_of_range("no column '" + name + "'");
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  CsvTable t;
  std::string line, cell;
  if (!std::getline(in, line)) return t;
  std::istringstream hs(line);
  while (std::getline(hs, cell, ',')) t.header.push_back(cell);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) row.push_back(cell == "nan" ? std::nan("") : std::stod(cell));
    if (row.size() != t.header.size()) throw std::runtime_error("ragged row in '" + path + "'");
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace molt::harness
