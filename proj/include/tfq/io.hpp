// File formats: JSON for metadata, CSV for bulk numeric payloads, 16-bit PGM
// for magnitude renderings. Numbers serialize with 17 significant digits so a
// write/read round trip is bitwise. All writers go through a temp file plus
// rename.
#pragma once

#include <string>

#include "tfq/operators.hpp"
#include "tfq/uncertainty.hpp"

namespace tfq::io {

void write_signal(const Signal& f, const std::string& path);
Signal read_signal(const std::string& path);

void write_set(const MeasurableSet& s, const std::string& path);
MeasurableSet read_set(const std::string& path);

// TF file: one-line JSON header (grid + fgrid), then CSV rows "xi, ki, re, im".
void write_tf(const TFFunction& F, const std::string& path);
TFFunction read_tf(const std::string& path);

// Operator file: one-line JSON header (grid + provenance), then "t, u, re, im".
void write_operator(const OperatorMatrix& M, const std::string& path);
OperatorMatrix read_operator(const std::string& path);

void write_report(const ConcentrationReport& rep, const std::string& path);
std::string report_to_json(const ConcentrationReport& rep);

// 16-bit binary PGM, rows = frequency (top = highest), columns = x,
// pixel = round(65535 |F| / max |F|). d = 1 only.
void write_pgm(const TFFunction& F, const std::string& path);

// Atomic text/binary write: temp file in the same directory, then rename.
void atomic_write(const std::string& path, const std::string& content);

}  // namespace tfq::io
