#include "helpers.hpp"

#include <json.hpp>

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <sstream>
#include <string>

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string quote(const std::string& s) { return "'" + s + "'"; }

Run cli(const testing::TempDir& dir, const std::string& args) {
  const auto out = dir / "stdout.txt";
  const auto err = dir / "stderr.txt";
  const std::string cmd = quote(DYSPHONIA_CLI) + " " + args + " > " + quote(out.string()) + " 2> " + quote(err.string());
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = testing::read_file(out);
  r.err = testing::read_file(err);
  return r;
}

std::string p(const testing::TempDir& dir, const std::string& name) { return quote((dir / name).string()); }

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

const char* kHeader =
    "maximum,mean_frequency,minimum,shimmer_db,log_entropy,power_bandwidth_hz,jitter_pct,mean_energy,rms,std_dev,"
    "variance,amplitude_mean,median,skewness,kurtosis,shannon_entropy,zcr,sure_entropy,iqr,label";

}  // namespace

TEST_CASE("synth writes WAV and truth, and rejects f0 at Nyquist") {
  testing::TempDir dir("cli_synth");
  Run r = cli(dir, "synth --kind pulse --jitter 1.0 --seed 2 --name v --out " + p(dir, "s"));
  REQUIRE(r.code == 0);
  const auto truth = nlohmann::json::parse(testing::read_file(dir / "s/v.json"));
  CHECK(truth.at("jitter_pct") == 1.0);
  CHECK(truth.at("kind") == "pulse_train");
  CHECK(std::filesystem::exists(dir / "s/v.wav"));

  r = cli(dir, "synth --f0 8000 --out " + p(dir, "s"));
  CHECK(r.code != 0);
  CHECK(r.err.find("f0") != std::string::npos);
}

TEST_CASE("synthetic recording re-ingested by extract") {
  testing::TempDir dir("cli_extract");
  REQUIRE(cli(dir, "synth --jitter 1.0 --seed 5 --name v --out " + p(dir, ".")).code == 0);
  testing::write_file(dir / "m.csv", "path,label\nv.wav,1\n");
  const Run r = cli(dir, "extract --manifest " + p(dir, "m.csv") + " --out " + p(dir, "f.csv"));
  REQUIRE(r.code == 0);
  std::istringstream table(testing::read_file(dir / "f.csv"));
  std::string header;
  std::string row;
  std::getline(table, header);
  std::getline(table, row);
  CHECK(header == kHeader);
  std::vector<std::string> cells;
  std::stringstream rs(row);
  for (std::string c; std::getline(rs, c, ',');) cells.push_back(c);
  REQUIRE(cells.size() == 20);
  CHECK(std::fabs(std::stod(cells[6]) - 1.0) <= 0.2);
  CHECK(cells[19] == "1");
}

TEST_CASE("empty manifest gives a header-only table") {
  testing::TempDir dir("cli_empty");
  testing::write_file(dir / "m.csv", "");
  const Run r = cli(dir, "extract --manifest " + p(dir, "m.csv") + " --out " + p(dir, "f.csv"));
  REQUIRE(r.code == 0);
  CHECK(testing::read_file(dir / "f.csv") == std::string(kHeader) + "\n");
}

TEST_CASE("extract lists rejects and is byte-reproducible") {
  testing::TempDir dir("cli_rejects");
  REQUIRE(cli(dir, "synth --seed 1 --name a --out " + p(dir, ".")).code == 0);
  REQUIRE(cli(dir, "synth --kind silence --name quiet --out " + p(dir, ".")).code == 0);
  testing::write_file(dir / "junk.wav", "not a wav file");
  testing::write_file(dir / "m.csv", "a.wav,0\nquiet.wav,1\njunk.wav,2\nmissing.wav,2\n");
  const std::string args = "extract --threads 2 --manifest " + p(dir, "m.csv") + " --out ";
  REQUIRE(cli(dir, args + p(dir, "f1.csv")).code == 0);
  REQUIRE(cli(dir, args + p(dir, "f2.csv")).code == 0);
  const std::string f1 = testing::read_file(dir / "f1.csv");
  CHECK(f1 == testing::read_file(dir / "f2.csv"));
  CHECK(count_lines(f1) == 2);
  const std::string rej = testing::read_file(dir / "f1.csv.rejects.csv");
  CHECK(count_lines(rej) == 4);
  CHECK(rej.find("quiet.wav") != std::string::npos);
  CHECK(rej.find("junk.wav") != std::string::npos);
  CHECK(rej.find("missing.wav") != std::string::npos);
}

TEST_CASE("bad manifest is a data error") {
  testing::TempDir dir("cli_badmanifest");
  testing::write_file(dir / "m.csv", "a.wav,0\nb.wav,7\n");
  const Run r = cli(dir, "extract --manifest " + p(dir, "m.csv") + " --out " + p(dir, "f.csv"));
  CHECK(r.code == 2);
  CHECK(r.err.find("line 2") != std::string::npos);
}

TEST_CASE("usage errors exit 1") {
  testing::TempDir dir("cli_usage");
  CHECK(cli(dir, "").code == 1);
  CHECK(cli(dir, "frobnicate").code == 1);
  CHECK(cli(dir, "evaluate --cv-k notanumber").code == 1);
  CHECK(cli(dir, "extract --out x.csv").code == 1);
  CHECK(cli(dir, "--help").code == 0);
}

TEST_CASE("rank surfaces label copies and constant columns") {
  testing::TempDir dir("cli_rank");
  std::string csv = "noise,copy,flat,label\n";
  for (int i = 0; i < 30; ++i) {
    const int label = i % 3;
    csv += std::to_string((i * 7919) % 13 / 13.0) + "," + std::to_string(label) + ",0.5," + std::to_string(label) + "\n";
  }
  testing::write_file(dir / "f.csv", csv);
  const Run r = cli(dir, "rank --features " + p(dir, "f.csv"));
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "feature,chi2,rank");
  std::getline(in, line);
  CHECK(line.rfind("copy,", 0) == 0);
  CHECK(line.substr(line.size() - 2) == ",1");
  std::string last;
  while (std::getline(in, line)) last = line;
  CHECK(last == "flat,0,3");
}

TEST_CASE("evaluate on blobs, plotdata, determinism and config round trip") {
  testing::TempDir dir("cli_eval");
  REQUIRE(cli(dir, "synth-blobs --per-class 22 28 30 --seed 3 --out " + p(dir, "b.csv")).code == 0);
  for (const char* alg : {"knn", "tree", "nb", "svm", "nn"}) {
    CAPTURE(alg);
    const std::string args = std::string("evaluate --algorithm ") + alg + " --seed 4 --features " + p(dir, "b.csv");
    const Run a = cli(dir, args);
    REQUIRE(a.code == 0);
    const Run b = cli(dir, args);
    CHECK(a.out == b.out);
    const auto j = nlohmann::json::parse(a.out);
    CHECK(j.at("cv").at("pooled").at("accuracy").get<double>() >= 0.95);
    CHECK(j.at("holdout").at("classes")[1].at("class") == "1 (Healthy)");
  }

  const Run plot = cli(dir, "plotdata --feature kurtosis --features " + p(dir, "b.csv"));
  REQUIRE(plot.code == 0);
  CHECK(count_lines(plot.out) == 81);
  for (const char* name : {"0 (Med Off)", "1 (Healthy)", "2 (Med On)"}) CHECK(plot.out.find(name) != std::string::npos);

  const Run bad = cli(dir, "plotdata --feature loudness --features " + p(dir, "b.csv"));
  CHECK(bad.code != 0);
  CHECK(bad.err.find("kurtosis") != std::string::npos);
  CHECK(bad.err.find("sure_entropy") != std::string::npos);

  const std::string tuned = "evaluate --algorithm knn --knn-k 3 --top-k 7 --bins 6 --cv-k 5 --seed 9 --features " +
                            p(dir, "b.csv");
  const Run direct = cli(dir, "--write-config " + p(dir, "cfg.ini") + " " + tuned);
  REQUIRE(direct.code == 0);
  const std::string cfg = testing::read_file(dir / "cfg.ini");
  CHECK(cfg.find("knn-k=3") != std::string::npos);
  const Run replay = cli(dir, "--config " + p(dir, "cfg.ini") + " evaluate");
  REQUIRE(replay.code == 0);
  CHECK(replay.out == direct.out);
  const auto j = nlohmann::json::parse(direct.out);
  CHECK(j.at("config").at("top_k") == 7);
  CHECK(j.at("cv").at("k") == 5);
}

TEST_CASE("train then predict") {
  testing::TempDir dir("cli_model");
  REQUIRE(cli(dir, "synth-blobs --per-class 5 5 5 --seed 1 --out " + p(dir, "b.csv")).code == 0);
  REQUIRE(cli(dir, "train --algorithm tree --features " + p(dir, "b.csv") + " --out " + p(dir, "m.json")).code == 0);
  const Run r = cli(dir, "predict --model " + p(dir, "m.json") + " --features " + p(dir, "b.csv"));
  REQUIRE(r.code == 0);
  CHECK(count_lines(r.out) == 16);
}
