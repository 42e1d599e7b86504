#include "coevo/report.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <vector>

#include "coevo/errors.hpp"

namespace coevo {

std::string format_fixed(double value) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::fixed, 6);
  if (ec != std::errc())
    throw std::runtime_error("format_fixed: value does not fit");
  std::string out(buf.data(), end);
  if (out == "-0.000000")
    out.erase(0, 1);
  return out;
}

std::string format_trace(const RunTrace& trace) {
  std::string out(kTraceHeader);
  out += '\n';
  for (const auto& r : trace) {
    out += std::to_string(r.generation) + ',' + std::to_string(r.host.min) + ',' +
           format_fixed(r.host.mean) + ',' + std::to_string(r.host.max) + ',' +
           std::to_string(r.parasite.min) + ',' + format_fixed(r.parasite.mean) + ',' +
           std::to_string(r.parasite.max) + ',' + format_fixed(r.sigma_host) + ',' +
           format_fixed(r.sigma_parasite) + ',' + format_fixed(r.delta) + ',' +
           (r.sf_triggered ? "1" : "0") + ',' + std::to_string(r.kappa) + ',' +
           format_fixed(r.virulence_host) + ',' + format_fixed(r.virulence_parasite) + '\n';
  }
  return out;
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    fields.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos)
      return fields;
    start = pos + 1;
  }
}

template <typename T> T parse_field(std::string_view text, std::size_t line) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw std::invalid_argument("trace line " + std::to_string(line) + ": bad field '" +
                                std::string(text) + "'");
  return value;
}

} // namespace

RunTrace parse_trace(std::string_view csv) {
  RunTrace trace;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < csv.size()) {
    auto end = csv.find('\n', start);
    if (end == std::string_view::npos)
      end = csv.size();
    const auto line = csv.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line_no == 1) {
      if (line != kTraceHeader)
        throw std::invalid_argument("trace: unexpected header");
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 14)
      throw std::invalid_argument("trace line " + std::to_string(line_no) + ": expected 14 fields");
    GenerationRecord r;
    r.generation = parse_field<std::size_t>(f[0], line_no);
    r.host = {parse_field<std::size_t>(f[1], line_no), parse_field<double>(f[2], line_no),
              parse_field<std::size_t>(f[3], line_no)};
    r.parasite = {parse_field<std::size_t>(f[4], line_no), parse_field<double>(f[5], line_no),
                  parse_field<std::size_t>(f[6], line_no)};
    r.sigma_host = parse_field<double>(f[7], line_no);
    r.sigma_parasite = parse_field<double>(f[8], line_no);
    r.delta = parse_field<double>(f[9], line_no);
    r.sf_triggered = parse_field<int>(f[10], line_no) != 0;
    r.kappa = parse_field<std::size_t>(f[11], line_no);
    r.virulence_host = parse_field<double>(f[12], line_no);
    r.virulence_parasite = parse_field<double>(f[13], line_no);
    trace.push_back(r);
  }
  if (line_no == 0)
    throw std::invalid_argument("trace: missing header");
  return trace;
}

std::string format_trials(std::span<const TrialResult> trials) {
  std::string out(kTrialsHeader);
  out += '\n';
  for (const auto& t : trials) {
    out += std::string(to_string(t.cell.strategy)) + ',' + format_fixed(t.cell.bias_host) + ',' +
           format_fixed(t.cell.bias_parasite) + ',' + std::to_string(t.trial) + ',' +
           std::to_string(t.seed) + ',' + (t.engaged_full_run ? "1" : "0") + ',' +
           (t.reached_optimum ? "1" : "0") + ',' + std::to_string(t.best_host_ones) + ',' +
           (t.first_disengagement ? std::to_string(*t.first_disengagement) : std::string()) + '\n';
  }
  return out;
}

std::string format_cells(std::span<const CellSummary> cells) {
  std::string out(kCellsHeader);
  out += '\n';
  for (const auto& c : cells) {
    out += std::string(to_string(c.cell.strategy)) + ',' + format_fixed(c.cell.bias_host) + ',' +
           format_fixed(c.cell.bias_parasite) + ',' + std::to_string(c.trials) + ',' +
           std::to_string(c.engaged_count) + ',' + std::to_string(c.optimum_count) + ',' +
           format_fixed(c.mean_best_ones) + '\n';
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file)
    throw IoError("cannot open '" + path.string() + "' for writing");
  file.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  file.close();
  if (!file)
    throw IoError("failed writing '" + path.string() + "'");
}

} // namespace coevo
