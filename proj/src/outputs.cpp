#include "wenofv/outputs.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace wenofv {
namespace {

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // binary: byte-identical across platforms
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

std::string_view weight_label(weight_kind k) {
  switch (k) {
    case weight_kind::linear: return "linear";
    case weight_kind::js: return "js";
    case weight_kind::z: return "z";
  }
  return "?";
}

}  // namespace

void write_profile_csv(const std::filesystem::path& path, const conserved_field& f,
                       const gas_model& gas) {
  std::ofstream out = open_out(path);
  const grid& g = f.g;
  if (g.dim == 1) {
    out << "x, rho, U, p\n";
    for (int i = 0; i < g.nx; ++i) {
      const primitive_state w = cons_to_prim(f.at(i), gas);
      out << g17(g.x_center(i)) << ", " << g17(w.rho) << ", " << g17(w.u) << ", " << g17(w.p)
          << "\n";
    }
  } else {
    out << "x, y, rho, u, v, p\n";
    for (int j = 0; j < g.ny; ++j) {
      for (int i = 0; i < g.nx; ++i) {
        const primitive_state w = cons_to_prim(f.at(i, j), gas);
        out << g17(g.x_center(i)) << ", " << g17(g.y_center(j)) << ", " << g17(w.rho) << ", "
            << g17(w.u) << ", " << g17(w.v) << ", " << g17(w.p) << "\n";
      }
    }
  }
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

void write_vtk(const std::filesystem::path& path, const conserved_field& f, const gas_model& gas,
               std::string_view title) {
  const grid& g = f.g;
  if (g.dim != 2) throw std::invalid_argument("write_vtk: needs a 2D field");
  std::ofstream out = open_out(path);

  out << "# vtk DataFile Version 3.0\n";
  out << title << "\n";
  out << "ASCII\n";
  out << "DATASET STRUCTURED_POINTS\n";
  out << "DIMENSIONS " << g.nx + 1 << " " << g.ny + 1 << " 1\n";
  out << "ORIGIN " << g17(g.x0) << " " << g17(g.y0) << " 0\n";
  out << "SPACING " << g17(g.dx()) << " " << g17(g.dy()) << " 1\n";
  out << "CELL_DATA " << static_cast<long long>(g.nx) * g.ny << "\n";

  out << "SCALARS density double 1\n";
  out << "LOOKUP_TABLE default\n";
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      out << g17(cons_to_prim(f.at(i, j), gas).rho) << "\n";
    }
  }

  out << "SCALARS pressure double 1\n";
  out << "LOOKUP_TABLE default\n";
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      out << g17(cons_to_prim(f.at(i, j), gas).p) << "\n";
    }
  }

  out << "VECTORS velocity double\n";
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const primitive_state w = cons_to_prim(f.at(i, j), gas);
      out << g17(w.u) << " " << g17(w.v) << " 0\n";
    }
  }
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

void write_study_csv(const std::filesystem::path& path, const grid& g,
                     const std::vector<error_report>& reports) {
  if (reports.empty()) throw std::invalid_argument("write_study_csv: no reports");
  const std::vector<int>& res = reports.front().resolutions;
  for (const error_report& r : reports) {
    if (r.resolutions != res) {
      throw std::invalid_argument("write_study_csv: reports disagree on resolutions");
    }
  }

  std::ofstream out = open_out(path);
  out << "mesh";
  for (const error_report& r : reports) {
    const std::string_view label = weight_label(r.scheme.weights.kind);
    out << ", " << label << "_L1, " << label << "_order";
  }
  out << "\n";

  const double per_unit = 1.0 / (g.x1 - g.x0);
  for (std::size_t row = 0; row < res.size(); ++row) {
    const double mesh = res[row] * per_unit;
    if (mesh == std::floor(mesh)) {
      out << static_cast<long long>(mesh);
    } else {
      out << g17(mesh);
    }
    for (const error_report& r : reports) {
      out << ", " << g17(r.l1.at(row)) << ", ";
      if (row > 0) out << g17(r.orders.at(row - 1));
    }
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::vector<std::filesystem::path> emit_outputs(const std::filesystem::path& dir,
                                                std::string_view stem, const conserved_field& f,
                                                const gas_model& gas,
                                                const std::vector<std::string>& formats) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> wanted = formats;
  if (wanted.empty()) wanted.push_back(f.g.dim == 1 ? "csv" : "vtk");

  std::vector<std::filesystem::path> written;
  for (const std::string& fmt : wanted) {
    if (fmt == "csv") {
      const std::filesystem::path p = dir / (std::string(stem) + ".csv");
      write_profile_csv(p, f, gas);
      written.push_back(p);
    } else if (fmt == "vtk") {
      if (f.g.dim != 2) continue;  // no 1D VTK; csv carries 1D profiles
      const std::filesystem::path p = dir / (std::string(stem) + ".vtk");
      write_vtk(p, f, gas, stem);
      written.push_back(p);
    } else {
      throw std::invalid_argument("emit_outputs: unknown format '" + fmt + "'");
    }
  }
  return written;
}

void write_manifest(const std::filesystem::path& path, const run_manifest& m) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());

  nlohmann::ordered_json j;
  j["command"] = m.command;
  j["status"] = m.status;
  j["version"] = m.version;
  j["wall_seconds"] = m.wall_seconds;
  j["steps"] = m.steps;
  j["t_final"] = m.t_final;
  std::array<double, 4> drift{};
  for (int k = 0; k < 4; ++k) drift[k] = m.final_totals[k] - m.initial_totals[k];
  j["conservation"] = {{"initial", m.initial_totals},
                       {"final", m.final_totals},
                       {"drift", drift}};
  j["failure"] = m.failure.empty() ? nlohmann::ordered_json(nullptr)
                                   : nlohmann::ordered_json(m.failure);
  j["artifacts"] = m.artifacts;
  j["config"] = m.config_echo;

  std::ofstream out = open_out(path);
  out << j.dump(2) << "\n";
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace wenofv
