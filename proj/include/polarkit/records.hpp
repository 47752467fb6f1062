#pragma once

#include "polarkit/body.hpp"
#include "polarkit/fourier.hpp"
#include "polarkit/measure.hpp"
#include "polarkit/radon.hpp"
#include "polarkit/variational.hpp"
#include "polarkit/verify.hpp"

#include <string>
#include <utility>
#include <vector>

namespace polarkit {

// Structured records are single-line JSON objects (JSON Lines). Every record
// carries a "record" tag naming its type and, where a body is involved, the
// body hash. Non-finite numbers are written as the strings "inf", "-inf",
// "nan". Doubles use shortest round-trip form, so records are bitwise stable.

std::string body_record(const ConvexBody& k);
std::string volume_record(const ConvexBody& k, const VolumeEstimate& v);
std::string bs_record(const BSReport& r);
std::string sweep_record(const std::string& family, const SweepRow& row);
std::string mahler_record(const ConvexBody& k, const MahlerReport& r);
std::string direction_record(const std::string& body_hash, const DirectionDiagnostics& d);
std::string equality_record(const ConvexBody& k, const EqualityDiagnostics& d, int n_dirs, std::uint64_t seed);
std::string extremal_record(const std::string& body_hash, const ExtremalEstimate& e);
std::string rho_convergence_record(const std::string& body_hash, const RhoConvergence& c);
std::string poisson_record(const std::string& body_hash, const PoissonWitness& w);
std::string radon_record(const std::string& body_hash, const RadonProfile& p);
std::string bandlimited_record(const BandlimitedFunction& f);

/// Comma-separated table with a '#'-commented header.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void comment(const std::string& line) { comments_.push_back(line); }
  void add_row(const std::vector<double>& row);
  void add_row(const std::vector<std::string>& row);
  std::size_t rows() const { return rows_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::string> comments_;
  std::vector<std::vector<std::string>> rows_;
};

std::string radon_table(const std::string& body_hash, const RadonProfile& p);

}  // namespace polarkit
