#include <gtest/gtest.h>

#include <sstream>

#include "fracrheo/io.hpp"

using namespace fracrheo;

TEST(ModelConfig, ParsesEveryModel) {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return parse_model_config(in, "test.rheo");
  };
  EXPECT_TRUE(std::holds_alternative<Hookean>(parse("model = hookean\nG = 2\n")));
  EXPECT_TRUE(std::holds_alternative<Newtonian>(parse("model = newtonian\neta = 2\n")));
  EXPECT_TRUE(std::holds_alternative<KelvinVoigt>(
      parse("model = kelvin_voigt\nG = 1\neta = 2\n")));
  EXPECT_TRUE(std::holds_alternative<Maxwell>(parse("model = maxwell\nG = 1\neta = 2\n")));
  const auto sb = parse("model = scott_blair\nK = 1.5\nq = 0.7\n# comment\n");
  ASSERT_TRUE(std::holds_alternative<ScottBlair>(sb));
  EXPECT_DOUBLE_EQ(std::get<ScottBlair>(sb).q, 0.7);
  EXPECT_TRUE(std::holds_alternative<FracMaxwell>(
      parse("model = frac_maxwell\nKp = 2\np = 0.3\nKq = 1\nq = 0.8\n")));
  EXPECT_TRUE(std::holds_alternative<FracKelvinVoigt>(
      parse("model = frac_kelvin_voigt\nKp = 2\np = 0.3\nKq = 1\nq = 0.8\n")));
  const auto g = parse("model = general\na = 1 0\na = 0.5, 0.4\nb = 2 0.3\n");
  ASSERT_TRUE(std::holds_alternative<GeneralFractional>(g));
  EXPECT_EQ(std::get<GeneralFractional>(g).a.size(), 2u);
}

TEST(ModelConfig, LineAnchoredDiagnostics) {
  std::istringstream in("model = scott_blair\nbogus = 1\n");
  try {
    parse_model_config(in, "cfg.rheo");
    FAIL() << "expected parse_error";
  } catch (const parse_error& e) {
    EXPECT_NE(std::string(e.what()).find("cfg.rheo:2"), std::string::npos) << e.what();
  }
}

TEST(ModelConfig, RejectsBadConfigs) {
  auto expect_fail = [](const std::string& text) {
    std::istringstream in(text);
    EXPECT_THROW(parse_model_config(in, "c"), parse_error) << text;
  };
  expect_fail("");                                         // no model
  expect_fail("model = nope\n");                           // unknown model
  expect_fail("model = scott_blair\nK = 1\n");             // missing q
  expect_fail("model = scott_blair\nK = 1\nq = 0.5\nG = 1\n");  // foreign key
  expect_fail("model = scott_blair\nK = 1\nq = abc\n");    // bad number
  expect_fail("model = scott_blair\nK = -1\nq = 0.5\n");   // invalid parameter
  expect_fail("model = scott_blair\nK = 1\nq = 0.5\nq = 0.6\n");  // duplicate
  expect_fail("model = hookean\nG = 1\na = 1 0\n");        // a/b outside general
  expect_fail("model = general\nb = 1 0.5\n");             // empty a side
}

TEST(SignalCsv, RoundTripBitExact) {
  SampledSignal s;
  s.dt = 0.1;
  s.values = {0.0, 1.0 / 3.0, 0.7071067811865476, -2.5e-17, 3.14159265358979};
  std::ostringstream out;
  write_signal_csv(out, s, {{"model", "test"}});
  std::istringstream in(out.str());
  const auto back = read_signal_csv(in);
  ASSERT_EQ(back.size(), s.size());
  EXPECT_EQ(back.dt, s.dt);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(back.values[i], s.values[i]);
}

TEST(SignalCsv, HeaderAndCommentsSkipped) {
  std::istringstream in("# a comment\nt,value\n0,1\n0.5,2\n1,3\n");
  const auto s = read_signal_csv(in);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_DOUBLE_EQ(s.dt, 0.5);
  EXPECT_DOUBLE_EQ(s.values[2], 3.0);
}

TEST(SignalCsv, NonUniformGridRejected) {
  std::istringstream in("0,1\n0.1,2\n0.35,3\n");
  EXPECT_THROW(read_signal_csv(in), grid_error);
  std::istringstream in2("0.5,1\n1.0,2\n");
  EXPECT_THROW(read_signal_csv(in2), grid_error);  // must start at 0
}

TEST(SignalCsv, NonFiniteRejected) {
  std::istringstream in("0,1\n0.1,inf\n");
  EXPECT_THROW(read_signal_csv(in), signal_error);
  std::istringstream in2("0,1\n0.1,nan\n");
  EXPECT_THROW(read_signal_csv(in2), signal_error);
}

TEST(SignalCsv, EmptyIsEmpty) {
  std::istringstream in("# nothing here\n");
  const auto s = read_signal_csv(in);
  EXPECT_TRUE(s.values.empty());
}
