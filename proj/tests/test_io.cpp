#include <gtest/gtest.h>

#include <sstream>

#include "grassharm/io.hpp"
#include "grassharm/verify/acceptance.hpp"

using namespace grassharm;

TEST(Io, WeightCsvColumns)
{
    const auto s = make_space(2, 2);
    std::ostringstream os;
    io::write_weight_csv(os, s, enumerate_weights(s, 0, 1));
    EXPECT_EQ(os.str(),
              "m_1,m_2,lambda_1,lambda_2,d_lambda,kappa_lambda\n"
              "0,0,0,0,1,0\n"
              "1,0,2,0,15,256\n"
              "1,1,2,2,20,384\n");
}

TEST(Io, SeriesCsvHasBoundOnLastRow)
{
    SeriesReport r;
    r.partial_sums = {1.0, 1.5};
    r.cutoff = 1;
    r.tail_bound = 0.25;
    std::ostringstream os;
    io::write_series_csv(os, r);
    EXPECT_EQ(os.str(), "cutoff,partial_sum,tail_bound\n0,1,\n1,1.5,0.25\n");
}

TEST(Io, JsonRecords)
{
    const auto s = make_space(3, 2);
    const auto j = io::to_json(s, make_weight(s, -1, {2, 0}));
    EXPECT_EQ(j.dump(), R"({"p":3,"q":2,"l":-1,"m":[2,0],"lambda":[5,1]})");
}

TEST(Verify, ReportIsIndependentOfWorkersForFastCriteria)
{
    verify::VerifyOptions a, b;
    b.workers = 3;
    const std::vector<verify::CriterionResult> ra{verify::criterion_kak(a), verify::criterion_thresholds(a)};
    const std::vector<verify::CriterionResult> rb{verify::criterion_kak(b), verify::criterion_thresholds(b)};
    EXPECT_EQ(verify::format_report(ra, a), verify::format_report(rb, b));
}
