#include "shotr/trajdata.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace shotr;

namespace {

TrackSet parse(const std::string& text, TrackFormat f = TrackFormat::generic_csv) {
    std::istringstream in(text);
    return parse_tracks(in, f);
}

}  // namespace

TEST(ParseTracks, GenericSingleTrack) {
    const TrackSet set = parse("track,t,x,y\n1,0,0,0\n1,1,1,2\n1,2,2,4\n");
    ASSERT_EQ(set.tracks.size(), 1u);
    EXPECT_EQ(set.dim, 2);
    const TrackSeries& t = set.tracks.at("1");
    EXPECT_EQ(t.size(), 3u);
    EXPECT_DOUBLE_EQ(t.coords()[2][1], 4.0);
    EXPECT_DOUBLE_EQ(t.duration(), 2.0);
}

TEST(ParseTracks, DuplicateTimestampNamesTrack) {
    try {
        parse("track,t,x\na,0,1\na,1,2\na,1,3\n");
        FAIL() << "expected DuplicateTimestamp";
    } catch (const DuplicateTimestamp& e) {
        EXPECT_EQ(e.track_id(), "a");
    }
}

TEST(ParseTracks, RowsAreSortedPerTrack) {
    const TrackSet a = parse("track,t,x\n1,2,20\n2,0,5\n1,0,0\n2,1,6\n1,1,10\n");
    const TrackSet b = parse("track,t,x\n1,0,0\n1,1,10\n1,2,20\n2,0,5\n2,1,6\n");
    ASSERT_EQ(a.tracks.size(), 2u);
    for (const auto& [id, tr] : b.tracks) {
        const TrackSeries& other = a.tracks.at(id);
        ASSERT_EQ(other.size(), tr.size());
        for (std::size_t k = 0; k < tr.size(); ++k) {
            EXPECT_EQ(other.times()[k], tr.times()[k]);
            EXPECT_EQ(other.coords()[k], tr.coords()[k]);
        }
    }
}

TEST(ParseTracks, ShortTracksDroppedWithWarning) {
    const TrackSet set = parse("track,t,x\n1,0,0\n1,1,1\n2,0,3\n");
    EXPECT_EQ(set.tracks.size(), 1u);
    ASSERT_EQ(set.warnings.size(), 1u);
    EXPECT_NE(set.warnings[0].find("'2'"), std::string::npos);
}

TEST(ParseTracks, NonFiniteRowsRejected) {
    const TrackSet set = parse("track,t,x\n1,0,0\n1,1,nan\n1,2,2\n1,3,3\n");
    EXPECT_EQ(set.tracks.at("1").size(), 3u);
    EXPECT_EQ(set.warnings.size(), 1u);
}

TEST(ParseTracks, MalformedRowsReportLine) {
    try {
        parse("track,t,x\n1,0,0\n1,abc,1\n");
        FAIL();
    } catch (const MalformedRow& e) {
        EXPECT_EQ(e.line(), 3u);
    }
    try {
        parse("id,time,x\n1,0,0\n");
        FAIL();
    } catch (const MalformedRow& e) {
        EXPECT_EQ(e.line(), 1u);
    }
    EXPECT_THROW(parse("track,t,x\n1,0\n"), MalformedRow);
    EXPECT_THROW(parse(""), MalformedRow);
}

TEST(ParseTracks, ByteOrderMarkAndQuotes) {
    const TrackSet set = parse("\xEF\xBB\xBFtrack,t,x\n\"a,b\",0,1\n\"a,b\",1,2\n");
    ASSERT_EQ(set.tracks.count("a,b"), 1u);
}

TEST(ParseTracks, NumericIdsOrderedNumerically) {
    const TrackSet set = parse("track,t,x\n10,0,0\n10,1,1\n2,0,0\n2,1,1\nb,0,0\nb,1,1\n");
    std::vector<std::string> ids;
    for (const auto& [id, t] : set.tracks) ids.push_back(id);
    EXPECT_EQ(ids, (std::vector<std::string>{"2", "10", "b"}));
}

TEST(ParseTracks, TrackMateMatchesGeneric) {
    const std::string tm =
        "LABEL,ID,TRACK_ID,QUALITY,POSITION_X,POSITION_Y,POSITION_Z,POSITION_T,FRAME\n"
        "Label,Spot ID,Track ID,Quality,X,Y,Z,T,Frame\n"
        "Label,Spot ID,Track ID,Quality,X,Y,Z,T,Frame\n"
        ",,,(quality),(micron),(micron),(micron),(sec),\n"
        "ID1,1,0,1.0,0.5,1.5,0.0,0.144,1\n"
        "ID0,0,0,1.0,0.25,1.0,0.0,0,0\n"
        "ID2,2,0,1.0,0.75,2.5,0.0,0.288,2\n"
        "ID9,9,None,1.0,9.0,9.0,0.0,0.288,2\n"
        "ID3,3,1,1.0,4.0,4.0,0.0,0,0\n"
        "ID4,4,1,1.0,5.0,3.0,0.0,0.144,1\n";
    const std::string generic =
        "track,t,x,y\n0,0,0.25,1.0\n0,0.144,0.5,1.5\n0,0.288,0.75,2.5\n1,0,4,4\n1,0.144,5,3\n";
    const TrackSet a = parse(tm, TrackFormat::trackmate_csv);
    const TrackSet b = parse(generic);
    EXPECT_EQ(a.dim, 2);
    EXPECT_EQ(a.units.at("x"), "micron");
    EXPECT_EQ(a.units.at("t"), "sec");
    ASSERT_EQ(a.tracks.size(), b.tracks.size());
    for (const auto& [id, tr] : b.tracks) {
        const TrackSeries& o = a.tracks.at(id);
        ASSERT_EQ(o.size(), tr.size());
        for (std::size_t k = 0; k < tr.size(); ++k) {
            EXPECT_EQ(o.times()[k], tr.times()[k]);
            EXPECT_EQ(o.coords()[k], tr.coords()[k]);
        }
    }
}

TEST(TrackSeries, InvariantsEnforced) {
    EXPECT_THROW(TrackSeries("a", {0.0, 1.0, 1.0}, {Point{}, Point{}, Point{}}, 1), DuplicateTimestamp);
    EXPECT_THROW(TrackSeries("a", {0.0, 2.0, 1.0}, {Point{}, Point{}, Point{}}, 1), NonMonotoneTimes);
    EXPECT_THROW(TrackSeries("a", {0.0}, {Point{}}, 1), InvalidInput);
    EXPECT_THROW(TrackSeries("a", {0.0, 1.0}, {Point{}}, 1), InvalidInput);
    EXPECT_THROW(TrackSeries("a", {0.0, 1.0}, {Point{}, Point{}}, 4), InvalidInput);
}

TEST(SplitAxes, ProjectionAndRoundTrip) {
    const TrackSeries tr("a", {0.0, 1.0}, {Point{1, 2, 0}, Point{3, 4, 0}}, 2);
    const auto axes = split_axes(tr);
    ASSERT_EQ(axes.size(), 2u);
    EXPECT_EQ(std::vector<double>(axes[0].values().begin(), axes[0].values().end()), (std::vector<double>{1, 3}));
    EXPECT_EQ(std::vector<double>(axes[1].values().begin(), axes[1].values().end()), (std::vector<double>{2, 4}));
    const TrackSeries back = merge_axes(axes, "a");
    for (std::size_t k = 0; k < tr.size(); ++k) EXPECT_EQ(back.coords()[k], tr.coords()[k]);

    const TrackSeries one("b", {0.0, 1.0, 3.0}, {Point{5, 0, 0}, Point{6, 0, 0}, Point{7, 0, 0}}, 1);
    const auto single = split_axes(one);
    ASSERT_EQ(single.size(), 1u);
    EXPECT_EQ(single[0].values()[2], 7.0);
}
