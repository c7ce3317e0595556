#include "ewalk/io.hpp"
#include "ewalk/run_config.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace ewalk;

TEST(Io, SeriesCsvRoundTrip) {
  const auto res = walk::evolve(walk::symmetric_origin_state<double>(), CoinSpec::hadamard().make<double>(),
                                FieldSpec::rational(1, 5), 30);
  const std::string csv = io::encode_series_csv(res.series, {{"tool", "ewalk"}});
  EXPECT_EQ(csv.rfind("# tool=ewalk\nt,sigma,mean,p_return\n", 0), 0u);
  const auto back = io::decode_series_csv(csv);
  ASSERT_EQ(back.points.size(), res.series.points.size());
  for (std::size_t i = 0; i < back.points.size(); ++i) {
    EXPECT_EQ(back.points[i].sigma, res.series.points[i].sigma);  // 17 digits round-trip exactly
    EXPECT_EQ(back.points[i].p_return, res.series.points[i].p_return);
  }
  EXPECT_EQ(io::encode_series_csv(back), io::encode_series_csv(res.series));
}

TEST(Io, SeriesJsonRoundTrip) {
  const auto res = walk::evolve(walk::symmetric_origin_state<double>(), CoinSpec::hadamard().make<double>(),
                                FieldSpec::golden(30), 12);
  const auto back = io::series_from_json(io::json::parse(io::series_to_json(res.series).dump()));
  EXPECT_EQ(io::encode_series_csv(back), io::encode_series_csv(res.series));
}

TEST(Io, StateRoundTrip) {
  const auto s = walk::power(walk::symmetric_origin_state<double>(), CoinSpec::hadamard().make<double>(),
                             FieldSpec::rational(2, 7), 9);
  const auto a = io::decode_state_csv(io::encode_state_csv(s));
  EXPECT_EQ(distance(a, s), 0.0);
  const auto b = io::state_from_json(io::state_to_json(s));
  EXPECT_EQ(distance(b, s), 0.0);
}

TEST(Io, RejectsMalformedCsv) {
  EXPECT_THROW(io::decode_series_csv("x,y\n1,2\n"), input_error);
  EXPECT_THROW(io::decode_series_csv("t,sigma,mean,p_return\n1,2,3\n"), input_error);
  EXPECT_THROW(io::decode_series_csv("t,sigma,mean,p_return\n1,2,3,abc\n"), input_error);
  EXPECT_THROW(io::parse_int("1.5"), input_error);
}

TEST(Io, LargeIntegersBecomeStrings) {
  EXPECT_TRUE(io::integer_json(big_int(12)).is_number());
  EXPECT_TRUE(io::integer_json(big_int(1) << 80).is_string());
}

TEST(Io, WriteAtomicReplacesFile) {
  const auto dir = std::filesystem::temp_directory_path() / "ewalk_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.txt";
  io::write_atomic(path, "first");
  io::write_atomic(path, "second");
  EXPECT_EQ(io::read_file(path), "second");
  EXPECT_FALSE(std::filesystem::exists(dir / "out.txt.tmp"));
  std::filesystem::remove_all(dir);
  EXPECT_THROW(io::write_atomic(dir / "missing" / "x.txt", "x"), input_error);
}

TEST(RunConfig, FileRoundTrip) {
  for (const auto& cmd : RunConfig::commands()) {
    RunConfig c = RunConfig::defaults(cmd);
    c.field = "0.25";
    c.verify = true;
    c.snapshots = "10,20";
    const RunConfig back = RunConfig::from_kv(cmd, RunConfig::parse_file(c.to_file()));
    EXPECT_EQ(back, c) << cmd;
  }
}

TEST(RunConfig, CommandDefaults) {
  EXPECT_EQ(RunConfig::defaults("localize").field, "golden");
  EXPECT_EQ(RunConfig::defaults("localize").digits, 300u);
  EXPECT_EQ(RunConfig::defaults("survey").truncation, 80);
  EXPECT_THROW(RunConfig::defaults("plot"), input_error);
}

TEST(RunConfig, RejectsBadInput) {
  EXPECT_THROW(RunConfig::from_kv("simulate", {{"colour", "red"}}), input_error);
  EXPECT_THROW(RunConfig::from_kv("simulate", {{"steps", "-3"}}), input_error);
  EXPECT_THROW(RunConfig::from_kv("simulate", {{"verify", "maybe"}}), input_error);
  EXPECT_THROW(RunConfig::from_kv("simulate", {{"command", "cfrac"}}), input_error);
  EXPECT_THROW(RunConfig::parse_file("steps 10\n"), input_error);
}

TEST(RunConfig, CommentsAndWhitespace) {
  const auto kv = RunConfig::parse_file("# a run\n  steps = 60 \r\n\nfield=1/5\n");
  EXPECT_EQ(kv.at("steps"), "60");
  EXPECT_EQ(kv.at("field"), "1/5");
}
