#include "circres/cli.hpp"
#include "circres/flow_check.hpp"
#include "circres/formats.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

using namespace circres;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("circres_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    int run(std::vector<std::string> args) {
        out_.str("");
        err_.str("");
        return cli::run(args, out_, err_);
    }

    std::string out() const { return out_.str(); }
    std::string err() const { return err_.str(); }

private:
    fs::path dir_;
    std::ostringstream out_;
    std::ostringstream err_;
};

}  // namespace

TEST_F(CliTest, GeneratedPigeonholeChecks) {
    ASSERT_EQ(run({"gen-php", "--complete", "4", "--cnf", path("php.cnf"), "--proof", path("php.cres")}), 0) << err();
    EXPECT_NE(out().find("goal balance 1"), std::string::npos);
    ASSERT_EQ(run({"check", path("php.cres"), path("php.cnf"), "--dot", path("php.dot")}), 0) << err();
    EXPECT_NE(out().find("WITNESSED"), std::string::npos);
    EXPECT_EQ(out().find("NOT-WITNESSED"), std::string::npos);
    EXPECT_NE(read_file(path("php.dot")).find("digraph"), std::string::npos);
}

TEST_F(CliTest, EmittedFlowsAreVerified) {
    ASSERT_EQ(run({"gen-php", "--sparse", "4", "--seed", "2", "--emit-flows", "--cnf", path("s.cnf"), "--proof",
                   path("s.cres"), "--graph-out", path("s.graph")}),
              0)
        << err();
    ASSERT_EQ(run({"check", path("s.cres"), path("s.cnf")}), 0) << err();
    EXPECT_NE(out().find("given flows: verified"), std::string::npos);
    ASSERT_EQ(run({"gen-php", "--graph", path("s.graph"), "--cnf", path("t.cnf"), "--proof", path("t.cres")}), 0);
    EXPECT_EQ(read_file(path("t.cnf")), read_file(path("s.cnf")));
}

TEST_F(CliTest, UnsoundTwoCycleIsNotWitnessed) {
    write_file(path("u.cres"),
               "p cres 4 4\nf 1 1 -1 0\nf 2 1 0\nf 3 -1 0\nf 4 0\n"
               "i 1 ax 1 1\ni 2 cut 1 2 1 2\ni 3 cut 1 1 3 3\ni 4 cut 1 2 3 4\ng 4\n");
    write_file(path("none.cnf"), "p cnf 1 0\n");
    EXPECT_EQ(run({"check", path("u.cres"), path("none.cnf")}), 1);
    EXPECT_NE(out().find("NOT-WITNESSED"), std::string::npos);
    EXPECT_EQ(run({"check", path("u.cres")}), 1);
}

TEST_F(CliTest, InputErrorsExitTwo) {
    write_file(path("bad.cres"), "p cres 1 1\nf 1 0\ni 1 cut 1 1 0\n");
    EXPECT_EQ(run({"check", path("bad.cres")}), 2);
    EXPECT_NE(err().find("line 3"), std::string::npos);
    // Well-formed lines, but the cut does not match its template.
    write_file(path("rule.cres"), "p cres 2 1\nf 1 1 0\nf 2 2 0\ni 1 cut 1 1 1 2\ng 2\n");
    EXPECT_EQ(run({"check", path("rule.cres")}), 2);
    EXPECT_EQ(run({"check", path("missing.cres")}), 2);
    EXPECT_EQ(run({"gen-php", "--complete", "0", "--cnf", path("a"), "--proof", path("b")}), 2);
    EXPECT_EQ(run({"frobnicate"}), 2);
    EXPECT_EQ(run({}), 2);
}

TEST_F(CliTest, HypothesisMarksMustComeFromTheCnf) {
    write_file(path("p.cres"), "p cres 2 1\nf 1 2 0\nf 2 -1 2 0\ni 1 split 1 1 2\nh 1\ng 2\n");
    write_file(path("ok.cnf"), "p cnf 2 1\n2 0\n");
    write_file(path("other.cnf"), "p cnf 2 1\n1 0\n");
    EXPECT_EQ(run({"check", path("p.cres"), path("ok.cnf")}), 0);
    EXPECT_EQ(run({"check", path("p.cres"), path("other.cnf")}), 2);
}

TEST_F(CliTest, GoalOverride) {
    write_file(path("p.cres"), "p cres 3 1\nf 1 2 0\nf 2 -1 2 0\nf 3 1 2 0\ni 1 split 1 1 2 3\nh 1\n");
    EXPECT_EQ(run({"check", path("p.cres"), "--goal", "-1 2 0"}), 0) << err();
    EXPECT_EQ(run({"check", path("p.cres"), "--goal", "1 0"}), 1);
    EXPECT_EQ(run({"check", path("p.cres")}), 2);
}

TEST_F(CliTest, TranslateBothWays) {
    write_file(path("cut.cres"), "p cres 3 1\nf 1 1 0\nf 2 -1 0\nf 3 0\ni 1 cut 1 1 2 3\nh 1\nh 2\ng 3\n");
    ASSERT_EQ(run({"translate", "c2s", path("cut.cres"), "-o", path("cut.sap")}), 0) << err();
    EXPECT_NE(out().find("degree 1"), std::string::npos);
    EXPECT_NE(out().find("degree equals width: yes"), std::string::npos);
    ASSERT_EQ(run({"translate", "s2c", path("cut.sap"), "-o", path("back.cres")}), 0) << err();
    EXPECT_NE(out().find("width equals degree: yes"), std::string::npos);
    ASSERT_EQ(run({"translate", "c2s", path("back.cres"), "-o", path("again.sap")}), 0) << err();
    EXPECT_NE(out().find("-> degree 1"), std::string::npos);
    EXPECT_EQ(run({"check", path("back.cres")}), 0);
}

TEST_F(CliTest, TranslateRejectsNonCheckingInput) {
    write_file(path("u.cres"),
               "p cres 4 4\nf 1 1 -1 0\nf 2 1 0\nf 3 -1 0\nf 4 0\n"
               "i 1 ax 1 1\ni 2 cut 1 2 1 2\ni 3 cut 1 1 3 3\ni 4 cut 1 2 3 4\ng 4\n");
    EXPECT_EQ(run({"translate", "c2s", path("u.cres"), "-o", path("u.sap")}), 2);
    write_file(path("bad.sap"), "p sap 1 1\nh 1 0\ng 0\nt 1 1 ; H 1\n");
    EXPECT_EQ(run({"translate", "s2c", path("bad.sap"), "-o", path("bad.cres")}), 2);
    EXPECT_FALSE(fs::exists(path("bad.cres")));
}

TEST_F(CliTest, SearchEmitsACheckingProof) {
    write_file(path("unit.cnf"), "p cnf 1 2\n1 0\n-1 0\n");
    ASSERT_EQ(run({"search", path("unit.cnf"), "--width", "1", "-o", path("unit.cres"), "--emit-flows"}), 0) << err();
    EXPECT_NE(out().find("rows"), std::string::npos);
    EXPECT_NE(out().find("time:"), std::string::npos);
    EXPECT_EQ(run({"check", path("unit.cres"), path("unit.cnf")}), 0);
    EXPECT_NE(out().find("given flows: verified"), std::string::npos);
}

TEST_F(CliTest, SearchNegativeGuardAndUsage) {
    write_file(path("sat.cnf"), "p cnf 2 2\n1 2 0\n-1 2 0\n");
    EXPECT_EQ(run({"search", path("sat.cnf"), "--width", "2"}), 1);
    EXPECT_NE(out().find("NOT-WITNESSED"), std::string::npos);
    EXPECT_NE(out().find("time:"), std::string::npos);
    EXPECT_EQ(run({"search", path("sat.cnf"), "--width", "1"}), 2);
    EXPECT_EQ(run({"search", path("sat.cnf"), "--width", "2", "--goal", "2 0"}), 0);
    EXPECT_EQ(run({"search", path("sat.cnf"), "--width", "2", "--guard-rows", "10"}), 3);
    EXPECT_NE(out().find("guard 10"), std::string::npos);
}
