#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "avcs/format.hpp"
#include "avcs/simulator.hpp"

namespace avcs {

namespace {

struct Setting {
  std::string name;
  EffectSize effect;
  ThetaPair star;
  std::int64_t m_max;
};

std::string bound_or_nan(const std::vector<double>& set, bool lower) {
  if (set.empty()) return "nan";
  return format_double(lower ? set.front() : set.back());
}

std::string interval_cols(const ConfInterval& ci) {
  if (ci.empty) return "nan,nan";
  return format_double(ci.lower) + "," + format_double(ci.upper);
}

std::string mle_cols(const GroupCounts& c) {
  return format_double(smoothed_mle(c.ones_a, c.trials_a)) + "," +
         format_double(smoothed_mle(c.ones_b, c.trials_b));
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

// Runs one setting and renders header + one row per m (from m = 0).
std::string run_setting(const Setting& s, std::uint64_t seed, std::uint64_t stream_index,
                        bool instantaneous, const std::string& header,
                        const std::function<std::string(const ConfSeqState&)>& row) {
  ConfSeqConfig cfg;
  cfg.effect = s.effect;
  cfg.alpha = 0.05;
  cfg.design = BlockDesign(1, 1);
  cfg.track_instantaneous = instantaneous;
  ConfSeqState state(cfg);
  BlockSource source(s.star, cfg.design, seed, stream_index);
  std::ostringstream os;
  os << header << '\n' << row(state) << '\n';
  for (std::int64_t m = 0; m < s.m_max; ++m) {
    state.advance(source.next());
    os << row(state) << '\n';
  }
  return os.str();
}

ThetaPair with_log_odds(double theta_a, double lor) {
  return ThetaPair(theta_a, sigmoid(logit(theta_a) + lor));
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  if (text == "fig2") return Scenario::Fig2;
  if (text == "fig3") return Scenario::Fig3;
  if (text == "figA1") return Scenario::FigA1;
  throw std::invalid_argument("unknown scenario '" + std::string(text) +
                              "' (expected fig2, fig3 or figA1)");
}

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::Fig2:
      return "fig2";
    case Scenario::Fig3:
      return "fig3";
    case Scenario::FigA1:
      return "figA1";
  }
  return "?";
}

std::vector<std::filesystem::path> figure_traces(Scenario scenario, std::uint64_t seed,
                                                 const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create " + out_dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;
  switch (scenario) {
    case Scenario::Fig2: {
      const std::vector<Setting> settings = {
          {"fig2_rd_1", EffectSize::RiskDifference, ThetaPair(0.3, 0.3), 1000},
          {"fig2_rd_2", EffectSize::RiskDifference, ThetaPair(0.2, 0.5), 1000},
          {"fig2_rd_3", EffectSize::RiskDifference, ThetaPair(0.6, 0.3), 1000},
          {"fig2_rr_1", EffectSize::RelativeRisk, ThetaPair(0.2, 0.2), 1000},
          {"fig2_rr_2", EffectSize::RelativeRisk, ThetaPair(0.2, 0.5), 1000},
          {"fig2_rr_3", EffectSize::RelativeRisk, ThetaPair(0.5, 0.25), 1000},
      };
      for (std::size_t k = 0; k < settings.size(); ++k) {
        const auto text = run_setting(
            settings[k], seed, k, false, "m,delta_lower,delta_upper,mle_a,mle_b",
            [](const ConfSeqState& st) {
              return std::to_string(st.m()) + "," + interval_cols(st.current_interval()) + "," +
                     mle_cols(st.counts());
            });
        written.push_back(out_dir / (settings[k].name + ".csv"));
        write_file(written.back(), text);
      }
      break;
    }
    case Scenario::Fig3: {
      const std::vector<Setting> settings = {
          {"fig3_pos", EffectSize::LogOddsRatio, with_log_odds(0.2, 2.5), 500},
          {"fig3_neg", EffectSize::LogOddsRatio, with_log_odds(0.8, -2.5), 500},
      };
      for (std::size_t k = 0; k < settings.size(); ++k) {
        const auto text = run_setting(
            settings[k], seed, k, false,
            "m,delta_lower,delta_upper,cs_plus_lower,cs_plus_upper,cs_plus_empty,"
            "cs_minus_lower,cs_minus_upper,cs_minus_empty,mle_a,mle_b",
            [](const ConfSeqState& st) {
              const auto plus = st.family_set(Family::Plus);
              const auto minus = st.family_set(Family::Minus);
              return std::to_string(st.m()) + "," + interval_cols(st.current_interval()) + "," +
                     bound_or_nan(plus, true) + "," + bound_or_nan(plus, false) + "," +
                     (plus.empty() ? "1" : "0") + "," + bound_or_nan(minus, true) + "," +
                     bound_or_nan(minus, false) + "," + (minus.empty() ? "1" : "0") + "," +
                     mle_cols(st.counts());
            });
        written.push_back(out_dir / (settings[k].name + ".csv"));
        write_file(written.back(), text);
      }
      break;
    }
    case Scenario::FigA1: {
      const Setting s{"figA1", EffectSize::RiskDifference, ThetaPair(0.05, 0.35), 100};
      const auto text = run_setting(
          s, seed, 0, true, "m,plain_lower,plain_upper,running_lower,running_upper,mle_a,mle_b",
          [](const ConfSeqState& st) {
            return std::to_string(st.m()) + "," + interval_cols(st.instantaneous_interval()) +
                   "," + interval_cols(st.current_interval()) + "," + mle_cols(st.counts());
          });
      written.push_back(out_dir / "figA1.csv");
      write_file(written.back(), text);
      break;
    }
  }
  return written;
}

}  // namespace avcs
