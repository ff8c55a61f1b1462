// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <sstream>

#include "devo/error.h"
#include "devo/metrics.h"
#include "fixtures.h"

using namespace devo;
using devo::testing::data_dir;

namespace {

struct GoldenPair {
  std::string clean;
  std::string processed;
  double stoi;
};

std::vector<GoldenPair> golden_pairs() {
  std::ifstream f(data_dir() / "stoi" / "golden.json");
  const auto doc = nlohmann::json::parse(f);
  std::vector<GoldenPair> out;
  for (const auto& p : doc["pairs"]) {
    out.push_back({p["clean"], p["processed"], p["stoi"]});
  }
  return out;
}

AudioBuffer golden(const std::string& name) { return read_wav(data_dir() / "stoi" / name); }

EnhancementTriple random_triple(std::uint64_t seed, std::size_t n = 8000) {
  const AudioBuffer s = devo::testing::babble(n, seed);
  const AudioBuffer noise = devo::testing::noise_buffer(n, seed + 1, 0.05);
  const AudioBuffer x = sum(s, noise);
  const AudioBuffer s_hat = sum(s, devo::testing::noise_buffer(n, seed + 2, 0.01));
  return EnhancementTriple(s, x, s_hat);
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("triples require matching lengths") {
  const AudioBuffer a = devo::testing::noise_buffer(2000, 1);
  CHECK_THROWS_AS(EnhancementTriple(a, a, devo::testing::noise_buffer(1999, 1)), Error);
  const EnhancementTriple t = random_triple(3);
  const AudioBuffer n = t.noise();
  for (std::size_t i = 0; i < n.size(); ++i) REQUIRE(n[i] == t.noisy()[i] - t.clean()[i]);
}

TEST_CASE("spectral magnitude loss basics") {
  const AudioBuffer a = devo::testing::noise_buffer(4000, 1);
  const AudioBuffer b = devo::testing::noise_buffer(4000, 2);
  CHECK(spectral_magnitude_loss(a, a) == 0.0);
  CHECK(spectral_magnitude_loss(a, b) == spectral_magnitude_loss(b, a));
  CHECK(spectral_magnitude_loss(a, b) > 0.0);
  // Negation keeps |re| + |im|, so the loss is zero although a != -a.
  CHECK(spectral_magnitude_loss(a, scaled(a, -1.0)) == 0.0);
  CHECK_THROWS_AS(spectral_magnitude_loss(a, devo::testing::noise_buffer(3999, 2)), Error);
  CHECK_THROWS_AS(spectral_magnitude_loss(AudioBuffer(std::vector<float>(100), 16000),
                                          AudioBuffer(std::vector<float>(100), 16000)),
                  Error);
}

TEST_CASE("spectral magnitude loss against a direct DFT of an impulse") {
  const std::size_t n = 1184;  // two frames
  std::vector<float> imp(n, 0.0f);
  imp[200] = 1.0f;
  const AudioBuffer zero(std::vector<float>(n), 16000);
  const AudioBuffer b(imp, 16000);
  double total = 0.0;
  for (int t = 0; t < 2; ++t) {
    for (int k = 0; k <= 512; ++k) {
      std::complex<double> acc = 0.0;
      for (int i = 0; i < 1024; ++i) {
        const double w = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / 1024.0);
        acc += w * imp[t * 160 + i] * std::polar(1.0, -2.0 * std::numbers::pi * k * i / 1024.0);
      }
      total += std::abs(acc.real()) + std::abs(acc.imag());
    }
  }
  CHECK(spectral_magnitude_loss(zero, b) == doctest::Approx(total / (2.0 * 513.0)).epsilon(1e-6));
}

TEST_CASE("PCM loss examples") {
  const EnhancementTriple t = random_triple(5);
  CHECK(pcm_loss(EnhancementTriple(t.clean(), t.noisy(), t.clean())) == 0.0);
  const EnhancementTriple noop(t.clean(), t.noisy(), t.noisy());
  const AudioBuffer silence(std::vector<float>(t.clean().size()), 16000);
  CHECK(pcm_loss(noop) == 0.5 * spectral_magnitude_loss(t.clean(), t.noisy()) +
                              0.5 * spectral_magnitude_loss(t.noise(), silence));
  for (std::uint64_t seed = 10; seed < 20; ++seed) {
    const EnhancementTriple r = random_triple(seed);
    const double parts = 0.5 * (spectral_magnitude_loss(r.clean(), r.enhanced()) +
                                 spectral_magnitude_loss(difference(r.noisy(), r.clean()),
                                                         difference(r.noisy(), r.enhanced())));
    CHECK(pcm_loss(r) == parts);
  }
}

TEST_CASE("Mel L1 loss") {
  const EnhancementTriple t = random_triple(7);
  CHECK(mel_l1_loss(EnhancementTriple(t.clean(), t.noisy(), t.clean())) == 0.0);
  // Recomputation from log_mel outputs.
  auto l1 = [](const FeatureMap& a, const FeatureMap& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) s += std::abs(double(a.data()[i]) - b.data()[i]);
    return s / static_cast<double>(a.data().size());
  };
  const double expect = 0.5 * l1(log_mel(t.clean()), log_mel(t.enhanced())) +
                        0.5 * l1(log_mel(t.noise()), log_mel(t.noise_estimate()));
  CHECK(mel_l1_loss(t) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(mel_l1_loss(t) > 0.0);
}

TEST_CASE("STOI agrees with the reference implementation on golden pairs") {
  const auto pairs = golden_pairs();
  REQUIRE(pairs.size() >= 10);
  for (const auto& p : pairs) {
    CAPTURE(p.processed);
    const double got = stoi(golden(p.clean), golden(p.processed));
    CHECK(std::abs(got - p.stoi) <= 1e-3);
  }
}

TEST_CASE("STOI self score, gain invariance and ordering") {
  const AudioBuffer clean = golden("clean0.wav");
  CHECK(stoi(clean, clean) >= 0.999);
  const AudioBuffer proc = golden("proc0_white_p0.wav");
  const double base = stoi(clean, proc);
  for (double a : {0.5, 0.1, 3.0}) CHECK(std::abs(stoi(clean, scaled(proc, a)) - base) <= 1e-6);
  for (int u = 0; u < 3; ++u) {
    const AudioBuffer c = golden("clean" + std::to_string(u) + ".wav");
    const std::string stem = "proc" + std::to_string(u) + "_white_";
    CHECK(stoi(c, golden(stem + "p10.wav")) > stoi(c, golden(stem + "m5.wav")));
  }
}

TEST_CASE("STOI input handling") {
  const AudioBuffer c = devo::testing::babble(16000, 2);
  CHECK_THROWS_AS(stoi(c, devo::testing::babble(15999, 2)), Error);
  try {
    stoi(devo::testing::babble(4000, 1), devo::testing::babble(4000, 1));
    FAIL("expected kTooShort");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kTooShort);
  }
  // Already at the analysis rate: no resampling, same kind of score.
  const AudioBuffer c10 = resample(c, 10000);
  CHECK(stoi(c10, c10) >= 0.999);
}

TEST_CASE("SNR examples") {
  const AudioBuffer s = devo::testing::noise_buffer(4000, 3);
  CHECK_FALSE(snr_db(s, s).has_value());
  CHECK(*snr_db(s, scaled(s, 2.0)) == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
  const AudioBuffer r = devo::testing::noise_buffer(4000, 4);
  const double full = *snr_db(s, sum(s, r));
  const double half = *snr_db(s, sum(s, scaled(r, 0.5)));
  CHECK(half - full == doctest::Approx(20.0 * std::log10(2.0)).epsilon(1e-5));
}

TEST_CASE("delta metrics") {
  const AudioBuffer c = golden("clean1.wav");
  const AudioBuffer x = golden("proc1_white_p0.wav");
  const EnhancementTriple noop(c, x, x);
  CHECK(*delta_metric(Metric::kStoi, noop) == 0.0);
  CHECK(*delta_metric(Metric::kSnr, noop) == 0.0);
  const AudioBuffer e = golden("proc1_white_p10.wav");
  const EnhancementTriple t(c, x, e);
  CHECK(*delta_metric(Metric::kStoi, t) == stoi(c, e) - stoi(c, x));
  CHECK(*delta_metric(Metric::kSnr, t) == *snr_db(c, e) - *snr_db(c, x));
  const EnhancementTriple perfect(c, x, c);
  CHECK(*delta_metric(Metric::kStoi, perfect) == stoi(c, c) - stoi(c, x));
  CHECK_FALSE(delta_metric(Metric::kSnr, perfect).has_value());
  CHECK_THROWS_AS(delta_metric(Metric::kPcm, t), Error);
}

TEST_CASE("metric report CSV") {
  const AudioBuffer c = golden("clean2.wav");
  const AudioBuffer x = golden("proc2_pink_p5.wav");
  std::vector<LabeledTriple> items;
  items.push_back({"noop", EnhancementTriple(c, x, x)});
  items.push_back({"better", EnhancementTriple(c, x, golden("proc2_white_p10.wav"))});
  const std::vector<Metric> metrics = {Metric::kStoi, Metric::kSnr, Metric::kPcm};
  const MetricReport r = evaluate(items, metrics, {"pesq"});
  CHECK(r.columns == std::vector<std::string>{"stoi", "snr", "pcm", "delta_stoi", "delta_snr", "pesq"});
  REQUIRE(r.rows.size() == 2);
  CHECK(*r.rows[0].values[3] == 0.0);
  CHECK(*r.rows[0].values[4] == 0.0);
  CHECK_FALSE(r.rows[0].values[5].has_value());
  const auto means = r.means();
  CHECK(*means[0] == doctest::Approx((*r.rows[0].values[0] + *r.rows[1].values[0]) / 2.0));
  CHECK_FALSE(means[5].has_value());

  const std::string csv = r.to_csv();
  std::istringstream lines(csv);
  std::string header, row0, row1, mean;
  std::getline(lines, header);
  std::getline(lines, row0);
  std::getline(lines, row1);
  std::getline(lines, mean);
  CHECK(header == "id,stoi,snr,pcm,delta_stoi,delta_snr,pesq");
  CHECK(row0.starts_with("noop,"));
  CHECK(row0.ends_with(",0,0,"));
  CHECK(mean.starts_with("mean,"));
  CHECK(evaluate(items, metrics, {"pesq"}).to_csv() == csv);
}

TEST_CASE("metric names") {
  for (Metric m : {Metric::kStoi, Metric::kSnr, Metric::kSpectral, Metric::kPcm, Metric::kMelL1}) {
    CHECK(metric_from_string(to_string(m)) == m);
  }
  CHECK_THROWS_AS(metric_from_string("pesq"), Error);
}

}  // TEST_SUITE
