#include <gtest/gtest.h>

#include <clocale>
#include <locale>
#include <random>
#include <string>

#include "fuzzy_klassen/io.hpp"

using namespace fuzzy_klassen;

namespace
{

Errc ingest_error(const std::string& csv, Locale locale, std::size_t* line = nullptr)
{
    try {
        ingest(csv, locale);
    } catch (const Error& e) {
        if (line != nullptr)
            *line = e.line();
        return e.code();
    }
    ADD_FAILURE() << "expected an ingest error";
    return Errc::invalid_input;
}

} // namespace

TEST(ParseNumber, DotDecimal)
{
    EXPECT_EQ(parse_number("296121.45"), 296121.45);
    EXPECT_EQ(parse_number(" 12 "), 12.0);
    EXPECT_EQ(parse_number("+3.5"), 3.5);
    EXPECT_EQ(parse_number("-1e3"), -1000.0);
    EXPECT_FALSE(parse_number("296.121,45"));
    EXPECT_FALSE(parse_number("12abc"));
    EXPECT_FALSE(parse_number(""));
    EXPECT_FALSE(parse_number("nan"));
    EXPECT_FALSE(parse_number("inf"));
}

TEST(ParseNumber, CommaDecimal)
{
    const Locale c = Locale::comma_decimal;
    EXPECT_EQ(parse_number("296.121,45", c), 296121.45);
    EXPECT_EQ(parse_number("14.107.542,93", c), 14107542.93);
    EXPECT_EQ(parse_number("12,5", c), 12.5);
    EXPECT_EQ(parse_number("1234", c), 1234.0);
    EXPECT_EQ(parse_number("-1.000,5", c), -1000.5);
    EXPECT_FALSE(parse_number("296.12,45", c));
    EXPECT_FALSE(parse_number("1,2,3", c));
    EXPECT_FALSE(parse_number(".123", c));
    EXPECT_FALSE(parse_number("1.2345", c));
}

namespace
{

struct CommaPunct : std::numpunct<char> {
    char do_decimal_point() const override { return ','; }
    char do_thousands_sep() const override { return '.'; }
    std::string do_grouping() const override { return "\3"; }
};

} // namespace

TEST(ParseNumber, IgnoresProcessLocale)
{
    const std::locale saved = std::locale::global(std::locale(std::locale::classic(), new CommaPunct));
    const std::string c_saved = std::setlocale(LC_NUMERIC, nullptr);
    std::setlocale(LC_NUMERIC, "de_DE.UTF-8"); // best effort; may be unavailable
    EXPECT_EQ(parse_number("296121.45"), 296121.45);
    EXPECT_EQ(parse_number("296.121,45", Locale::comma_decimal), 296121.45);
    const auto ds = ingest("region,sector,year,value\nR,A,2012,1.5\nR,A,2011,2.25\n", Locale::dot_decimal);
    EXPECT_EQ(ds[0].at("A").value_t1, 2.25);
    std::setlocale(LC_NUMERIC, c_saved.c_str());
    std::locale::global(saved);
}

TEST(Property, CommaRoundTripOfFormattedIntegers)
{
    std::mt19937_64 rng(61);
    std::uniform_int_distribution<long long> v(0, 999999999999LL);
    std::uniform_int_distribution<int> cents(0, 99);
    for (int i = 0; i < 2000; ++i) {
        const long long whole = v(rng);
        const int frac = cents(rng);
        std::string digits = std::to_string(whole);
        std::string grouped;
        for (std::size_t k = 0; k < digits.size(); ++k) {
            if (k != 0 && (digits.size() - k) % 3 == 0)
                grouped += '.';
            grouped += digits[k];
        }
        char frac_text[4];
        std::snprintf(frac_text, sizeof frac_text, "%02d", frac);
        const auto got = parse_number(grouped + "," + frac_text, Locale::comma_decimal);
        ASSERT_TRUE(got.has_value()) << grouped;
        ASSERT_EQ(*got, *parse_number(digits + "." + frac_text));
    }
}

TEST(Property, BothLocalesIngestTheSameDataset)
{
    std::mt19937_64 rng(67);
    std::uniform_int_distribution<long long> whole(1, 99999999);
    std::uniform_int_distribution<int> cents(0, 99), sectors(1, 9);
    auto comma = [](long long w, int c) {
        std::string d = std::to_string(w), g;
        for (std::size_t k = 0; k < d.size(); ++k) {
            if (k != 0 && (d.size() - k) % 3 == 0)
                g += '.';
            g += d[k];
        }
        char buf[8];
        std::snprintf(buf, sizeof buf, ",%02d", c);
        return "\"" + g + buf + "\"";
    };
    for (int i = 0; i < 200; ++i) {
        std::string dot = "region,sector,year,value\n", com = dot;
        const int n = sectors(rng);
        for (int s = 0; s < n; ++s)
            for (int year : {2011, 2012}) {
                const long long w = whole(rng);
                const int c = cents(rng);
                char buf[32];
                std::snprintf(buf, sizeof buf, "%lld.%02d", w, c);
                const std::string head = "R,S" + std::to_string(s) + "," + std::to_string(year) + ",";
                dot += head + buf + "\n";
                com += head + comma(w, c) + "\n";
            }
        ASSERT_EQ(ingest(dot, Locale::dot_decimal), ingest(com, Locale::comma_decimal));
    }
}

TEST(SplitCsv, QuotedFields)
{
    EXPECT_EQ(split_csv_line("a, b ,\"1.234,5\",\"x\"\"y\"", 1),
              (std::vector<std::string>{"a", "b", "1.234,5", "x\"y"}));
    EXPECT_EQ(split_csv_line("", 1), (std::vector<std::string>{""}));
    EXPECT_THROW(split_csv_line("\"open", 3), Error);
}

TEST(Locale, Names)
{
    EXPECT_EQ(parse_locale("comma-decimal"), Locale::comma_decimal);
    EXPECT_EQ(parse_locale("dot-decimal"), Locale::dot_decimal);
    EXPECT_THROW(parse_locale("semicolon"), Error);
}

TEST(Ingest, CommaDecimalFixtureRows)
{
    const std::string csv = "\xEF\xBB\xBF# comment\r\n"
                            "region,sector,year,value\r\n"
                            "Kota Cilegon,V1,2011,\"293.563,49\"\r\n"
                            "Kota Cilegon,V1,2012,\"296.121,45\"\r\n"
                            "Kota Cilegon,V2,2012,\"12.935,68\"\r\n"
                            "Kota Cilegon,V2,2011,\"12.101,38\"\r\n";
    const auto ds = ingest(csv, Locale::comma_decimal);
    ASSERT_EQ(ds.size(), 1u);
    EXPECT_EQ(ds[0].region(), "Kota Cilegon");
    EXPECT_EQ(ds[0].at("V1"), (SectorObservation{"V1", 296121.45, 293563.49}));
    EXPECT_EQ(ds[0].sectors(), (std::vector<std::string>{"V1", "V2"}));
}

TEST(Ingest, DotDecimalAndExplicitYears)
{
    const std::string csv = "region,sector,year,value\n"
                            "R,A,2010,1\nR,A,2011,2\nR,A,2012,3\n"
                            "Q,A,2011,5\nQ,A,2012,6\n";
    EXPECT_EQ(ingest_error(csv, Locale::dot_decimal), Errc::missing_year);
    const auto ds = ingest(csv, Locale::dot_decimal, YearPair{2012, 2011});
    ASSERT_EQ(ds.size(), 2u);
    EXPECT_EQ(ds[0].at("A"), (SectorObservation{"A", 3, 2}));
    EXPECT_EQ(ds[1].region(), "Q");
    EXPECT_EQ(select_region(ds, "Q", "data").at("A").value_t, 6.0);
    EXPECT_THROW(select_region(ds, "", "data"), Error);
    EXPECT_THROW(select_region(ds, "Z", "data"), Error);
}

TEST(Ingest, ErrorKindsAndLines)
{
    std::size_t line = 0;
    EXPECT_EQ(ingest_error("region,sector,year,value\nR,A,2012,1\nR,B,2012,2\nR,A,2011,1\n", Locale::dot_decimal),
              Errc::missing_year);
    EXPECT_EQ(ingest_error("region,sector,year,value\nR,A,2012,1\nR,A,2011,1\nR,A,2012,4\n", Locale::dot_decimal, &line),
              Errc::duplicate_row);
    EXPECT_EQ(line, 4u);
    EXPECT_EQ(ingest_error("region,sector,year,value\nR,A,2012,1\nR,A,2011,1,5\n", Locale::dot_decimal, &line),
              Errc::invalid_input);
    EXPECT_EQ(line, 3u);
    EXPECT_EQ(ingest_error("region,sector,year,value\n\nR,A,2012,12x\n", Locale::dot_decimal, &line),
              Errc::unparsable_number);
    EXPECT_EQ(line, 3u);
    EXPECT_EQ(ingest_error("region,sector,year,value\nR,A,2012,0\n", Locale::dot_decimal), Errc::non_positive_value);
    EXPECT_EQ(ingest_error("region,sector,year,value\nR,A,20x2,1\n", Locale::dot_decimal), Errc::unparsable_number);
    EXPECT_EQ(ingest_error("region,sector,year,value\n", Locale::dot_decimal), Errc::missing_year);
    EXPECT_EQ(ingest_error("sector,year,value\nA,2012,1\n", Locale::dot_decimal), Errc::invalid_input);
    EXPECT_EQ(ingest_error("", Locale::dot_decimal), Errc::invalid_input);
    // a comma-decimal value read as dot-decimal
    EXPECT_EQ(ingest_error("region,sector,year,value\nR,A,2012,\"1.234,5\"\n", Locale::dot_decimal),
              Errc::unparsable_number);
}

TEST(ReadScores, BothHeaders)
{
    const auto a = read_scores("sector,rd,rc\nV1,37.8,35.4\nV2,75.5,75.3\n", Locale::dot_decimal, "X");
    EXPECT_EQ(a.region, "X");
    EXPECT_EQ(a.at("V2"), (RdRc{75.5, 75.3}));
    const auto b = read_scores("region,sector,rd,rc\nBanten,V1,\"29,1\",\"27,5\"\n", Locale::comma_decimal);
    EXPECT_EQ(b.region, "Banten");
    EXPECT_EQ(b.at("V1"), (RdRc{29.1, 27.5}));
    EXPECT_THROW(read_scores("sector,rd,rc\nV1,1,2\nV1,3,4\n", Locale::dot_decimal), Error);
    EXPECT_THROW(read_scores("region,sector,rd,rc\nA,V1,1,2\nB,V2,3,4\n", Locale::dot_decimal), Error);
    EXPECT_THROW(read_scores("sector,rd\nV1,1\n", Locale::dot_decimal), Error);
}
