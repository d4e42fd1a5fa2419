#pragma once

#include <string>
#include <utility>
#include <vector>

#include "logdiff/backlund.hpp"
#include "logdiff/grid.hpp"
#include "logdiff/quadrature.hpp"

namespace logdiff {

/// Full round-trip decimal formatting for all numeric output.
std::string format_double(double v);

/// Field CSV, columns x,value.
void write_field_csv(const std::string& path, const Field& f);

/// JSON snapshot {grid:{n,L}, t, values:[...]}.
std::string snapshot_json(const Field& f, double t);
void write_snapshot_json(const std::string& path, const Field& f, double t);
std::pair<Field, double> read_snapshot_json(const std::string& path);

/// Diagnostics CSV with the fixed header t,mass,l1,l2,l4,linf,lx,energy,min,max.
void write_diagnostics_csv(const std::string& path, const std::vector<DiagnosticsRecord>& recs);

/// TransportField CSV (y,v) and JSON.
void write_transport_csv(const std::string& path, const TransportField& tf);
std::string transport_json(const TransportField& tf);
void write_transport_json(const std::string& path, const TransportField& tf);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace logdiff
