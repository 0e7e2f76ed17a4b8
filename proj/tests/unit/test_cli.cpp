#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "config.hpp"
#include "doctest.h"
#include "hacc/errors.hpp"
#include "manifest.hpp"
#include "run.hpp"
#include "snapshot.hpp"

using namespace hacc;
using namespace hacc::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("hacc_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::vector<std::byte> read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::vector<std::byte> out(raw.size());
  std::memcpy(out.data(), raw.data(), raw.size());
  return out;
}

RunConfig tiny_run(const fs::path& out) {
  RunConfig c;
  c.box_length = 64.0;
  c.n_particles = 8;
  c.n_grid = 16;
  c.n_steps = 3;
  c.snapshot_every = 2;
  c.fit_samples = 500;
  c.fit_sources = 4;
  c.threads = 1;
  c.output_dir = out.string();
  return c;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("config parsing") {
  std::istringstream in("# comment\nbox_length = 100  # trailing\n\nn_particles=16\nrank_dims = 2, 1,2\nmode = p3m\n");
  const RunConfig c = parse_config(in);
  CHECK(c.box_length == 100.0);
  CHECK(c.n_particles == 16);
  CHECK(c.rank_dims == std::array<int, 3>{2, 1, 2});
  CHECK(c.mode == sr::ShortRangeMode::p3m_direct);
  CHECK(c.n_grid == 64);
}

TEST_CASE("config errors are aggregated") {
  std::istringstream in("box_length = abc\nbogus = 1\nn_grid 12\nrank_dims = 1,2\n");
  try {
    (void)parse_config(in);
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("box_length") != std::string::npos);
    CHECK(msg.find("bogus") != std::string::npos);
    CHECK(msg.find("line 3") != std::string::npos);
    CHECK(msg.find("rank_dims") != std::string::npos);
  }
  RunConfig bad;
  bad.n_grid = 4;
  bad.n_c = 0;
  bad.rank_dims = {8, 1, 1};
  try {
    bad.validate();
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("n_grid") != std::string::npos);
    CHECK(msg.find("n_c") != std::string::npos);
  }
}

TEST_CASE("config echo roundtrip and relative table paths") {
  RunConfig c;
  c.sigma = 0.1 + 0.2;
  c.seed = 18446744073709551615ULL;
  c.spectrum = "table";
  c.pk_file = "/abs/pk.txt";
  std::istringstream in(c.echo());
  const RunConfig back = parse_config(in);
  CHECK(back.echo() == c.echo());
  CHECK(back.sigma == c.sigma);
  CHECK(c.echo(false).find("output_dir") == std::string::npos);

  std::istringstream rel("spectrum = table\npk_file = ../data/pk.txt\n");
  const RunConfig r = parse_config(rel, {}, "/home/x/configs");
  CHECK(r.pk_file == "/home/x/data/pk.txt");
  CHECK_THROWS_AS(load_config("/nonexistent/run.cfg"), IoError);
}

TEST_CASE("golden snapshot fixture") {
  const Snapshot s = read_snapshot(fs::path(HACC_TEST_DATA_DIR) / "golden_snapshot.bin");
  REQUIRE(s.size() == 37);
  CHECK(s.box_length == 10.0);
  CHECK(s.a == 0.5);
  CHECK(s.cosmo.omega_m == 0.265);
  CHECK(s.cosmo.h == 0.71);
  CHECK(s.seed == 20120601);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double di = static_cast<double>(i);
    CHECK(s.x[i] == static_cast<float>(10.0 * std::abs(std::sin(0.37 * di))));
    CHECK(s.z[i] == static_cast<float>(10.0 * std::abs(std::sin(0.37 * di + 2.0))));
    CHECK(s.py[i] == static_cast<float>(std::cos(0.11 * di * 2.0) * 1e-2));
    CHECK(s.id[i] == (i * 7919) % (1ULL << 40));
  }
  CHECK(encode_snapshot(s) == read_bytes(fs::path(HACC_TEST_DATA_DIR) / "golden_snapshot.bin"));
}

TEST_CASE("snapshot roundtrip and rejection") {
  const fs::path dir = scratch("snap");
  ParticleStore p;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const double v = static_cast<double>(i);
    p.push_back({v * 0.01, v * 0.02, v * 0.03, -v, v, 0.5, 1.0, 999 - i, i % 7 == 0 ? Status::passive : Status::active});
  }
  const Snapshot s = make_snapshot(p, 10.0, 0.25, CosmologyParams{}, 5, 1);
  CHECK(s.size() == 1000 - 143);
  CHECK(std::is_sorted(s.id.begin(), s.id.end()));
  write_snapshot(dir / "s.bin", s);
  const Snapshot back = read_snapshot(dir / "s.bin");
  CHECK(encode_snapshot(back) == encode_snapshot(s));
  CHECK(back.x == s.x);
  CHECK(make_snapshot(p, 10.0, 0.25, CosmologyParams{}, 5, 10).size() < 100);

  auto bytes = encode_snapshot(s);
  auto magic = bytes;
  magic[0] = std::byte{'X'};
  CHECK_THROWS_AS(decode_snapshot(magic), IoError);
  auto version = bytes;
  version[8] = std::byte{2};
  CHECK_THROWS_WITH_AS(decode_snapshot(version), doctest::Contains("version"), IoError);
  auto cut = bytes;
  cut.resize(cut.size() - 5);
  const std::string counts =
      "expected " + std::to_string(bytes.size()) + " bytes, found " + std::to_string(cut.size());
  CHECK_THROWS_WITH_AS(decode_snapshot(cut), doctest::Contains(counts.c_str()), IoError);
  auto extra = bytes;
  extra.push_back(std::byte{0});
  CHECK_THROWS_AS(decode_snapshot(extra), IoError);
  CHECK_THROWS_AS(read_snapshot(dir / "missing.bin"), IoError);
}

TEST_CASE("git blob hashes") {
  CHECK(git_blob_hash(std::string()) == "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
  CHECK(git_blob_hash(std::string("hello\n")) == "ce013625030ba8dba906f756967f9e9ca394464a");
}

TEST_CASE("manifest layout") {
  const std::string m = manifest_json("a = 1\n", {{"x.bin", "abc", 3}});
  CHECK(m.find("\"format\"") < m.find("\"config\""));
  CHECK(m.find("\"outputs_hash\"") != std::string::npos);
  CHECK(m == manifest_json("a = 1\n", {{"x.bin", "abc", 3}}));
}

TEST_CASE("runs are reproducible and write the expected files") {
  const fs::path a = scratch("run_a");
  const fs::path b = scratch("run_b");
  std::ostringstream log;
  const RunResult ra = run(tiny_run(a), log);
  const RunResult rb = run(tiny_run(b), log);
  CHECK(ra.manifest == rb.manifest);
  CHECK(ra.outputs_hash == rb.outputs_hash);
  for (const char* f : {"kernel.csv", "manifest.json", "metrics.csv", "snap_0000.bin", "snap_0002.bin",
                        "snap_0003.bin", "pk_0000.csv", "pk_0003.csv"}) {
    CHECK_MESSAGE(fs::exists(a / f), f);
  }
  CHECK(ra.snapshot_steps == std::vector<int>{0, 2, 3});
  CHECK(ra.metrics.size() == 3);
  CHECK(read_snapshot(a / "snap_0003.bin").size() == 512);

  RunConfig other = tiny_run(b);
  other.seed = 99;
  CHECK(run(other, log).outputs_hash != ra.outputs_hash);
}

TEST_CASE("run errors carry the phase") {
  RunConfig c = tiny_run(scratch("run_err"));
  c.spectrum = "table";
  c.pk_file = "/nonexistent/pk.txt";
  std::ostringstream log;
  CHECK_THROWS_WITH_AS(run(c, log), doctest::Contains("[ic]"), IoError);
  c = tiny_run(scratch("run_err2"));
  c.n_grid = 2;
  CHECK_THROWS_AS(run(c, log), ConfigError);
}

}
