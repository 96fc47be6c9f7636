#include "purelab/dataset_io.hpp"

#include <cstdio>
#include <fstream>
#include <functional>

#include "purelab/version.hpp"

namespace purelab {

namespace {

using nlohmann::ordered_json;

constexpr const char* kCrlf = "\r\n";

void append_row(std::string& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out += ',';
    out += cells[i];
  }
  out += kCrlf;
}

template <typename Record>
std::string render(const std::vector<Record>& records, DatasetFormat format,
                   const std::vector<std::string>& header,
                   const std::function<void(const Record&, std::vector<std::string>&)>& to_cells,
                   const std::function<ordered_json(const Record&)>& to_json) {
  std::string out;
  if (format == DatasetFormat::csv) {
    append_row(out, header);
    std::vector<std::string> cells;
    for (const Record& record : records) {
      cells.clear();
      to_cells(record, cells);
      append_row(out, cells);
    }
  } else {
    for (const Record& record : records) {
      out += to_json(record).dump();
      out += '\n';
    }
  }
  return out;
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string render_dataset(const std::vector<Fig1bRecord>& records, DatasetFormat format) {
  return render<Fig1bRecord>(
      records, format,
      {"density_index", "unitary_index", "eps_target_in", "eps_aux_in", "eps_out", "x", "y"},
      [](const Fig1bRecord& r, std::vector<std::string>& cells) {
        cells = {std::to_string(r.density_index), std::to_string(r.unitary_index),
                 format_double(r.eps_target_in), format_double(r.eps_aux_in),
                 format_double(r.eps_out), format_double(r.x), format_double(r.y)};
      },
      [](const Fig1bRecord& r) {
        return ordered_json{{"density_index", r.density_index},
                            {"unitary_index", r.unitary_index},
                            {"eps_target_in", r.eps_target_in},
                            {"eps_aux_in", r.eps_aux_in},
                            {"eps_out", r.eps_out},
                            {"x", r.x},
                            {"y", r.y}};
      });
}

std::string render_dataset(const std::vector<MixerGridRecord>& records, DatasetFormat format) {
  return render<MixerGridRecord>(
      records, format, {"alpha", "beta", "alpha_out", "gap"},
      [](const MixerGridRecord& r, std::vector<std::string>& cells) {
        cells = {format_double(r.alpha), format_double(r.beta),
                 format_double(r.alpha_out), format_double(r.gap)};
      },
      [](const MixerGridRecord& r) {
        return ordered_json{{"alpha", r.alpha},
                            {"beta", r.beta},
                            {"alpha_out", r.alpha_out},
                            {"gap", r.gap}};
      });
}

std::string render_dataset(const std::vector<HbacRunRecord>& records, DatasetFormat format) {
  return render<HbacRunRecord>(
      records, format,
      {"n", "eps0", "delta", "iteration", "eps_n", "limit", "distance_to_limit"},
      [](const HbacRunRecord& r, std::vector<std::string>& cells) {
        cells = {std::to_string(r.n),         format_double(r.eps0),
                 format_double(r.delta),      std::to_string(r.iteration),
                 format_double(r.eps_n),      format_double(r.limit),
                 format_double(r.distance_to_limit)};
      },
      [](const HbacRunRecord& r) {
        return ordered_json{{"n", r.n},
                            {"eps0", r.eps0},
                            {"delta", r.delta},
                            {"iteration", r.iteration},
                            {"eps_n", r.eps_n},
                            {"limit", r.limit},
                            {"distance_to_limit", r.distance_to_limit}};
      });
}

std::string render_dataset(const std::vector<DistillationRecord>& records, DatasetFormat format) {
  return render<DistillationRecord>(
      records, format, {"j", "eps_achieved", "bound"},
      [](const DistillationRecord& r, std::vector<std::string>& cells) {
        cells = {std::to_string(r.j), format_double(r.eps_achieved), format_double(r.bound)};
      },
      [](const DistillationRecord& r) {
        return ordered_json{{"j", r.j}, {"eps_achieved", r.eps_achieved}, {"bound", r.bound}};
      });
}

std::string render_manifest(const std::string& command, const ordered_json& config,
                            std::uint64_t seed, std::size_t record_count,
                            const ordered_json& metrics) {
  ordered_json manifest;
  manifest["command"] = command;
  manifest["config"] = config;
  manifest["seed"] = seed;
  manifest["record_count"] = record_count;
  manifest["metrics"] = metrics;
  manifest["library_version"] = kVersion;
  return manifest.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::ios_base::failure("cannot open " + path + " for writing");
  }
  out << content;
  out.flush();
  if (!out) {
    throw std::ios_base::failure("failed writing " + path);
  }
}

}  // namespace purelab
