#include <doctest.h>

#include "hs2/campaign.hpp"

using namespace hs2;

TEST_CASE("campaign: identical configs give byte-identical reports") {
    const std::string cfg =
        R"({"scenario":"convexity","n":1,"field":"sq","seed":7,"samples":200})";
    const CampaignOutcome a = run_campaign(cfg);
    const CampaignOutcome b = run_campaign(cfg);
    CHECK(a.status == CampaignStatus::Pass);
    CHECK(a.summary_json == b.summary_json);
    CHECK(a.csv == b.csv);
    CHECK_FALSE(a.summary_json.empty());
    CHECK_FALSE(a.csv.empty());
}

TEST_CASE("campaign: seed changes the samples but not the verdicts") {
    const CampaignOutcome a = run_campaign(
        R"({"scenario":"convexity","n":1,"field":"sq","seed":1,"samples":200})");
    const CampaignOutcome b = run_campaign(
        R"({"scenario":"convexity","n":1,"field":"sq","seed":2,"samples":200})");
    CHECK(a.status == CampaignStatus::Pass);
    CHECK(b.status == CampaignStatus::Pass);
    CHECK(a.summary_json != b.summary_json);
}

TEST_CASE("campaign: exit-status contract") {
    CHECK(run_campaign("this is not json").status == CampaignStatus::ConfigError);
    CHECK(run_campaign(R"({"scenario":"no-such-scenario"})").status ==
          CampaignStatus::ConfigError);
    CHECK(run_campaign(R"({})").status == CampaignStatus::ConfigError);
    CHECK(run_campaign(R"({"scenario":"measure","n":0})").status ==
          CampaignStatus::ConfigError);
    // A verdict that contradicts the configured expectation reports
    // CheckFailed.
    const CampaignOutcome fail = run_campaign(
        R"({"scenario":"convexity","n":1,"field":"sq","seed":3,"samples":200,)"
        R"("expect":"NEITHER"})");
    CHECK(fail.status == CampaignStatus::CheckFailed);
    CHECK_FALSE(run_campaign("this is not json").message.empty());
}

TEST_CASE("campaign: each scenario runs green on its default configuration") {
    const char* configs[] = {
        R"({"scenario":"convexity","n":1,"field":"sq","seed":5,"samples":300})",
        R"({"scenario":"measure","n":1,"field":"sq","resolution":8,"seed":5})",
        R"({"scenario":"compare","n":1,"seed":5,"resolution":12,"pairs":2})",
        R"({"scenario":"oscillation","n":1,"seed":5,"resolution":12,"family_size":2})",
        R"({"scenario":"taylor","n":1,"field":"gauge4","seed":5})",
        R"({"scenario":"appendix","n":2,"seed":5,"samples":200})",
        R"({"scenario":"weak-convergence","n":1,"field":"sq","resolution":8,)"
        R"("seed":5,"steps":3})",
    };
    for (const char* cfg : configs) {
        CAPTURE(cfg);
        const CampaignOutcome out = run_campaign(cfg);
        CHECK(out.message.empty());
        CHECK(out.status == CampaignStatus::Pass);
    }
}

TEST_CASE("campaign: report embeds scenario and is valid JSON-ish") {
    const CampaignOutcome out = run_campaign(
        R"({"scenario":"taylor","n":1,"field":"gauge4","seed":9})");
    CHECK(out.status == CampaignStatus::Pass);
    CHECK(out.summary_json.find("\"scenario\"") != std::string::npos);
    CHECK(out.summary_json.find("taylor") != std::string::npos);
    CHECK(out.csv.find(',') != std::string::npos);
}
