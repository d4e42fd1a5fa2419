#include "logdiff/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace logdiff {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {
std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    return os;
}
}  // namespace

void write_field_csv(const std::string& path, const Field& f) {
    std::ofstream os = open_out(path);
    os << "x,value\n";
    for (int i = 0; i < f.size(); ++i)
        os << format_double(f.grid().x(i)) << ',' << format_double(f[i]) << '\n';
}

std::string snapshot_json(const Field& f, double t) {
    nlohmann::json j;
    j["grid"]["n"] = f.grid().n;
    j["grid"]["L"] = f.grid().L;
    j["t"] = t;
    j["values"] = std::vector<double>(f.values().begin(), f.values().end());
    return j.dump();
}

void write_snapshot_json(const std::string& path, const Field& f, double t) {
    open_out(path) << snapshot_json(f, t) << '\n';
}

std::pair<Field, double> read_snapshot_json(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open snapshot: " + path);
    nlohmann::json j;
    is >> j;
    Grid1D g = Grid1D::make(j.at("grid").at("n").get<int>(), j.at("grid").at("L").get<double>());
    std::vector<double> values = j.at("values").get<std::vector<double>>();
    return {Field(g, std::move(values)), j.value("t", 0.0)};
}

void write_diagnostics_csv(const std::string& path,
                           const std::vector<DiagnosticsRecord>& recs) {
    std::ofstream os = open_out(path);
    os << "t,mass,l1,l2,l4,linf,lx,energy,min,max\n";
    for (const auto& r : recs) {
        os << format_double(r.t) << ',' << format_double(r.mass) << ',' << format_double(r.l1)
           << ',' << format_double(r.l2) << ',' << format_double(r.l4) << ','
           << format_double(r.linf) << ',' << format_double(r.lx) << ','
           << format_double(r.energy) << ',' << format_double(r.min_u) << ','
           << format_double(r.max_u) << '\n';
    }
}

void write_transport_csv(const std::string& path, const TransportField& tf) {
    std::ofstream os = open_out(path);
    os << "y,v\n";
    for (size_t i = 0; i < tf.y_nodes.size(); ++i)
        os << format_double(tf.y_nodes[i]) << ',' << format_double(tf.v_values[i]) << '\n';
}

std::string transport_json(const TransportField& tf) {
    nlohmann::json j;
    j["t"] = tf.t;
    j["period"] = tf.period;
    j["y"] = tf.y_nodes;
    j["v"] = tf.v_values;
    return j.dump();
}

void write_transport_json(const std::string& path, const TransportField& tf) {
    open_out(path) << transport_json(tf) << '\n';
}

void write_text_file(const std::string& path, const std::string& content) {
    open_out(path) << content;
}

}  // namespace logdiff
