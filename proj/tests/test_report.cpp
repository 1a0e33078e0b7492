#include <gtest/gtest.h>

#include "kanext/report.hpp"

namespace kanext {
namespace {

TEST(Report, EmptyReportHasHeaderAndNoRecords) {
  Report r;
  r.source = "empty.spec";
  EXPECT_EQ(emit(r, Format::Machine),
            "report: kanext 1\nsource: empty.spec\nrecords: 0\n\nsummary: pass=0 fail=0 error=0\n");
  EXPECT_TRUE(r.all_pass());
}

TEST(Report, SinglePassRecordHasOneVerdictLine) {
  Report r;
  r.source = "one.spec";
  Record rec;
  rec.command = "validate C";
  rec.tag = "validate";
  rec.add("kind", "category");
  rec.seconds = 1.5;
  r.records.push_back(rec);
  const std::string out = emit(r, Format::Machine);
  EXPECT_EQ(out,
            "report: kanext 1\nsource: one.spec\nrecords: 1\n\nrecord: 1\ncommand: validate C\n"
            "tag: validate\nverdict: pass\nkind: category\nend: 1\n\nsummary: pass=1 fail=0 error=0\n");
}

TEST(Report, FailCitesTheFirstReasonOnly) {
  Record rec;
  rec.fail("first");
  rec.fail("second");
  EXPECT_EQ(rec.verdict, Verdict::Fail);
  ASSERT_EQ(rec.fields.size(), 1u);
  EXPECT_EQ(rec.fields[0].second, "first");
}

TEST(Report, NewlinesInValuesAreEscaped) {
  Report r;
  Record rec;
  rec.add("table", "a\nb");
  r.records.push_back(rec);
  EXPECT_NE(emit(r, Format::Machine).find("table: a\\nb\n"), std::string::npos);
}

TEST(Report, HumanFormatShowsVerdicts) {
  Report r;
  r.source = "x";
  Record rec;
  rec.command = "check coyoneda F";
  rec.verdict = Verdict::Error;
  r.records.push_back(rec);
  const std::string out = emit(r, Format::Human);
  EXPECT_NE(out.find("ERROR"), std::string::npos);
  EXPECT_NE(out.find("summary: pass=0, fail=0, error=1"), std::string::npos);
  EXPECT_FALSE(r.all_pass());
}

}  // namespace
}  // namespace kanext
