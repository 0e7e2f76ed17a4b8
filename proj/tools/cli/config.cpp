#include "config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "hacc/errors.hpp"
#include "hacc/shortrange/kernel.hpp"

namespace hacc::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& value) {
  T out{};
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) {
    throw ConfigError("cannot parse '" + value + "' as a number");
  }
  return out;
}

std::vector<std::string> split_list(const std::string& value) {
  std::string v = value;
  for (char& c : v) {
    if (c == ',' || c == 'x' || c == 'X') {
      c = ' ';
    }
  }
  std::istringstream in(v);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) {
    out.push_back(tok);
  }
  return out;
}

template <std::size_t N>
std::array<int, N> parse_dims(const std::string& value) {
  const auto parts = split_list(value);
  if (parts.size() != N) {
    throw ConfigError("expected " + std::to_string(N) + " integers, got '" + value + "'");
  }
  std::array<int, N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    out[i] = parse_number<int>(parts[i]);
  }
  return out;
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::filesystem::path&)>;

template <class T>
Setter number(T RunConfig::*field) {
  return [field](RunConfig& c, const std::string& v, const std::filesystem::path&) {
    c.*field = parse_number<T>(v);
  };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"box_length", number(&RunConfig::box_length)},
      {"n_particles", number(&RunConfig::n_particles)},
      {"n_grid", number(&RunConfig::n_grid)},
      {"rank_dims", [](RunConfig& c, const std::string& v, const auto&) { c.rank_dims = parse_dims<3>(v); }},
      {"fft_ranks", [](RunConfig& c, const std::string& v, const auto&) { c.fft_ranks = parse_dims<2>(v); }},
      {"overload_depth", number(&RunConfig::overload_depth)},
      {"sigma", number(&RunConfig::sigma)},
      {"n_s", number(&RunConfig::n_s)},
      {"r_cut", number(&RunConfig::r_cut)},
      {"epsilon", number(&RunConfig::epsilon)},
      {"leaf_size", number(&RunConfig::leaf_size)},
      {"fit_samples", number(&RunConfig::fit_samples)},
      {"fit_sources", number(&RunConfig::fit_sources)},
      {"n_c", number(&RunConfig::n_c)},
      {"z_in", number(&RunConfig::z_in)},
      {"a_final", number(&RunConfig::a_final)},
      {"n_steps", number(&RunConfig::n_steps)},
      {"omega_m", number(&RunConfig::omega_m)},
      {"h", number(&RunConfig::h)},
      {"spectrum", [](RunConfig& c, const std::string& v, const auto&) { c.spectrum = v; }},
      {"pk_amplitude", number(&RunConfig::pk_amplitude)},
      {"pk_index", number(&RunConfig::pk_index)},
      {"pk_file",
       [](RunConfig& c, const std::string& v, const std::filesystem::path& base) {
         std::filesystem::path p(v);
         c.pk_file = (p.is_relative() && !base.empty()) ? (base / p).lexically_normal().string() : v;
       }},
      {"seed", number(&RunConfig::seed)},
      {"mode", [](RunConfig& c, const std::string& v, const auto&) { c.mode = sr::parse_mode(v); }},
      {"threads", number(&RunConfig::threads)},
      {"output_dir", [](RunConfig& c, const std::string& v, const auto&) { c.output_dir = v; }},
      {"snapshot_every", number(&RunConfig::snapshot_every)},
      {"snapshot_stride", number(&RunConfig::snapshot_stride)},
      {"pk_bins", number(&RunConfig::pk_bins)},
  };
  return table;
}

}  // namespace

double RunConfig::resolved_epsilon() const {
  return epsilon >= 0.0 ? epsilon : sr::default_epsilon(grid_spacing());
}

void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value,
                      const std::filesystem::path& base_dir) {
  const auto& table = setters();
  const auto it = table.find(key);
  if (it == table.end()) {
    throw ConfigError("unknown key '" + key + "'");
  }
  try {
    it->second(cfg, value, base_dir);
  } catch (const ConfigError& e) {
    throw ConfigError(key + ": " + e.what());
  }
}

RunConfig parse_config(std::istream& in, RunConfig base, const std::filesystem::path& base_dir) {
  std::vector<std::string> problems;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      problems.push_back("line " + std::to_string(line_no) + ": expected key = value");
      continue;
    }
    try {
      set_config_value(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), base_dir);
    } catch (const ConfigError& e) {
      problems.push_back("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!problems.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& p : problems) {
      msg += "\n  " + p;
    }
    throw ConfigError(msg);
  }
  return base;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open config file " + path.string());
  }
  return parse_config(in, std::move(base), path.parent_path());
}

void RunConfig::validate() const {
  std::vector<std::string> p;
  auto require = [&p](bool ok, const std::string& msg) {
    if (!ok) {
      p.push_back(msg);
    }
  };
  require(box_length > 0.0, "box_length must be positive");
  require(n_particles >= 8, "n_particles must be at least 8");
  require(n_grid >= 8, "n_grid must be at least 8");
  for (int d : rank_dims) {
    require(d >= 1, "rank_dims entries must be positive");
  }
  require(fft_ranks[0] >= 1 && fft_ranks[1] >= 1, "fft_ranks entries must be positive");
  require(fft_ranks[0] <= n_grid && fft_ranks[1] <= n_grid, "fft_ranks may not exceed n_grid");
  require(sigma >= 0.0, "sigma must be non-negative");
  require(n_s >= 0.0, "n_s must be non-negative");
  require(r_cut >= 0.0, "r_cut must be non-negative");
  if (box_length > 0.0 && n_grid >= 8) {
    require(resolved_r_cut() < 0.25 * box_length, "r_cut must be below L/4");
    require(resolved_depth() >= resolved_r_cut(), "overload_depth must be at least r_cut");
    for (int d : rank_dims) {
      if (d > 1) {
        require(resolved_depth() < 0.5 * box_length / d, "overload_depth must be below half the block extent");
      }
    }
  }
  require(leaf_size >= 1, "leaf_size must be positive");
  require(fit_samples >= 100, "fit_samples must be at least 100");
  require(fit_sources >= 1, "fit_sources must be positive");
  require(n_c >= 1 && n_c <= 32, "n_c must lie in [1, 32]");
  require(z_in > 0.0, "z_in must be positive");
  require(a_final > a_in() && a_final <= 1.0, "a_final must lie in (a_in, 1]");
  require(n_steps >= 1, "n_steps must be positive");
  require(omega_m > 0.0 && omega_m <= 1.0, "omega_m must lie in (0, 1]");
  require(h > 0.0, "h must be positive");
  require(spectrum == "power_law" || spectrum == "table", "spectrum must be power_law or table");
  if (spectrum == "table") {
    require(!pk_file.empty(), "spectrum = table needs pk_file");
  } else {
    require(pk_amplitude >= 0.0, "pk_amplitude must be non-negative");
  }
  require(threads >= 0, "threads must be non-negative");
  require(!output_dir.empty(), "output_dir must not be empty");
  require(snapshot_every >= 1, "snapshot_every must be positive");
  require(snapshot_stride >= 1, "snapshot_stride must be positive");
  require(pk_bins >= 1, "pk_bins must be positive");
  if (!p.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& s : p) {
      msg += "\n  " + s;
    }
    throw ConfigError(msg);
  }
}

std::string RunConfig::echo(bool with_output_dir) const {
  auto num = [](double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
  };
  std::ostringstream o;
  o << "box_length = " << num(box_length) << '\n'
    << "n_particles = " << n_particles << '\n'
    << "n_grid = " << n_grid << '\n'
    << "rank_dims = " << rank_dims[0] << ',' << rank_dims[1] << ',' << rank_dims[2] << '\n'
    << "fft_ranks = " << fft_ranks[0] << ',' << fft_ranks[1] << '\n'
    << "overload_depth = " << num(overload_depth) << '\n'
    << "sigma = " << num(sigma) << '\n'
    << "n_s = " << num(n_s) << '\n'
    << "r_cut = " << num(r_cut) << '\n'
    << "epsilon = " << num(epsilon) << '\n'
    << "leaf_size = " << leaf_size << '\n'
    << "fit_samples = " << fit_samples << '\n'
    << "fit_sources = " << fit_sources << '\n'
    << "n_c = " << n_c << '\n'
    << "z_in = " << num(z_in) << '\n'
    << "a_final = " << num(a_final) << '\n'
    << "n_steps = " << n_steps << '\n'
    << "omega_m = " << num(omega_m) << '\n'
    << "h = " << num(h) << '\n'
    << "spectrum = " << spectrum << '\n'
    << "pk_amplitude = " << num(pk_amplitude) << '\n'
    << "pk_index = " << num(pk_index) << '\n';
  if (!pk_file.empty()) {
    o << "pk_file = " << pk_file << '\n';
  }
  o << "seed = " << seed << '\n'
    << "mode = " << sr::to_string(mode) << '\n'
    << "threads = " << threads << '\n'
    << "snapshot_every = " << snapshot_every << '\n'
    << "snapshot_stride = " << snapshot_stride << '\n'
    << "pk_bins = " << pk_bins << '\n';
  if (with_output_dir) {
    o << "output_dir = " << output_dir << '\n';
  }
  return o.str();
}

}  // namespace hacc::cli
