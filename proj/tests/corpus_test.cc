// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "opsum/corpus.h"

#include <fstream>
#include <sstream>

#include "absl/strings/str_join.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_support.h"

namespace opsum {
namespace {

using ::opsum::testing::ResourceDir;
using ::testing::ElementsAre;
using ::testing::IsEmpty;

const TextResources& Resources() {
  static const TextResources* resources = [] {
    auto loaded = TextResources::Load(ResourceDir() / "stopwords.txt",
                                      ResourceDir() / "abbreviations.txt");
    return new TextResources(*std::move(loaded));
  }();
  return *resources;
}

Review MakeReview(std::string id, std::string text,
                  Gender gender = Gender::kFemale) {
  Review r;
  r.id = std::move(id);
  r.place = "p";
  r.text = std::move(text);
  r.rating = 4;
  r.gender = gender;
  return r;
}

TEST(PreprocessTest, StripsStopwordsAndKeepsOrder) {
  PreprocessedText out =
      Preprocess("The guides were amazing!", Resources().stopwords);
  EXPECT_THAT(out.tokens, ElementsAre("the", "guides", "were", "amazing"));
  EXPECT_THAT(out.content_tokens, ElementsAre("guides", "amazing"));
}

TEST(PreprocessTest, AllStopwords) {
  PreprocessedText out = Preprocess("It is it.", Resources().stopwords);
  EXPECT_THAT(out.tokens, ElementsAre("it", "is", "it"));
  EXPECT_THAT(out.content_tokens, IsEmpty());
}

TEST(PreprocessTest, EmptyInput) {
  PreprocessedText out = Preprocess("", Resources().stopwords);
  EXPECT_THAT(out.tokens, IsEmpty());
  EXPECT_THAT(out.content_tokens, IsEmpty());
}

TEST(PreprocessTest, PronounsAreStopwords) {
  for (const char* p : {"i", "me", "you", "he", "she", "we", "they", "them",
                        "his", "her", "our", "their", "it", "us"}) {
    EXPECT_TRUE(Resources().stopwords.contains(p)) << p;
  }
}

TEST(TokenizeTest, PunctuationOnlyWordsVanish) {
  EXPECT_THAT(Tokenize("Wow -- it's \"great\" ..."),
              ElementsAre("wow", "its", "great"));
}

TEST(SplitterTest, TwoTerminals) {
  EXPECT_THAT(Resources().splitter.Split("Great place. Go early!"),
              ElementsAre("Great place.", "Go early!"));
}

TEST(SplitterTest, NoTerminalPunctuation) {
  EXPECT_THAT(Resources().splitter.Split("Amazing"), ElementsAre("Amazing"));
}

TEST(SplitterTest, AbbreviationDoesNotBreak) {
  EXPECT_THAT(Resources().splitter.Split("U.S. visitors loved it."),
              ElementsAre("U.S. visitors loved it."));
  EXPECT_THAT(Resources().splitter.Split("We met Dr. Rossi at 9 a.m. sharp."),
              ElementsAre("We met Dr. Rossi at 9 a.m. sharp."));
}

TEST(SplitterTest, RunsOfPunctuation) {
  EXPECT_THAT(Resources().splitter.Split("Wow!!! Really?! \"Yes.\" Ok"),
              ElementsAre("Wow!!!", "Really?!", "\"Yes.\"", "Ok"));
}

TEST(SegmentTest, IdsWordCountsAndGender) {
  Review r = MakeReview("r1", "Great place. Go early!", Gender::kMale);
  r.likes = 7;
  std::vector<Sentence> s = SegmentSentences(r, Resources());
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].id, "r1#0");
  EXPECT_EQ(s[1].id, "r1#1");
  EXPECT_EQ(s[0].word_count, 2);
  EXPECT_EQ(s[1].review_id, "r1");
  EXPECT_EQ(s[1].gender, Gender::kMale);
  EXPECT_EQ(s[1].review_likes, 7);
}

TEST(SegmentTest, WordlessFragmentFoldsIntoNeighbour) {
  std::vector<Sentence> s =
      SegmentSentences(MakeReview("r", "Loved it. !!! See you."), Resources());
  for (const Sentence& sentence : s) EXPECT_GE(sentence.word_count, 1);
  std::vector<std::string> texts;
  for (const Sentence& sentence : s) texts.push_back(sentence.text);
  EXPECT_EQ(Tokenize(absl::StrJoin(texts, " ")),
            Tokenize("Loved it. !!! See you."));
}

TEST(SegmentTest, PunctuationOnlyReviewYieldsNothing) {
  EXPECT_THAT(SegmentSentences(MakeReview("r", "?!"), Resources()), IsEmpty());
}

TEST(SegmentTest, InvariantsOnDeskFixture) {
  std::ifstream in(testing::DeskFixture());
  IngestResult result = IngestJsonLines(in, "");
  ASSERT_THAT(result.errors, IsEmpty());
  for (const Review& review : result.reviews) {
    std::vector<Sentence> s = SegmentSentences(review, Resources());
    ASSERT_FALSE(s.empty());
    std::string joined;
    int words = 0;
    for (const Sentence& sentence : s) {
      EXPECT_EQ(sentence.word_count, static_cast<int>(sentence.tokens.size()));
      EXPECT_GE(sentence.word_count, 1);
      words += sentence.word_count;
      for (const std::string& t : sentence.content_tokens) {
        EXPECT_NE(std::find(sentence.tokens.begin(), sentence.tokens.end(), t),
                  sentence.tokens.end());
      }
      joined += sentence.text;
    }
    EXPECT_GE(words, static_cast<int>(s.size()));
    std::string a;
    std::string b;
    for (char c : joined) if (!isspace(static_cast<unsigned char>(c))) a += c;
    for (char c : review.text)
      if (!isspace(static_cast<unsigned char>(c))) b += c;
    EXPECT_EQ(a, b) << review.id;
  }
}

TEST(IngestTest, MissingTextIsReportedWithLine) {
  std::istringstream in(
      R"({"id":"a","place":"p","text":"Nice.","rating":5,"likes":1,"gender":"F"})"
      "\n"
      R"({"id":"b","place":"p","rating":3,"likes":0,"gender":"M"})"
      "\n"
      R"({"id":"c","place":"p","text":"Busy.","rating":2,"likes":4,"gender":"U","extra":1})"
      "\n");
  IngestResult result = IngestJsonLines(in, "p");
  ASSERT_EQ(result.reviews.size(), 2u);
  ASSERT_EQ(result.errors.size(), 1u);
  EXPECT_EQ(result.errors[0].line, 2);
  EXPECT_THAT(result.errors[0].message, ::testing::HasSubstr("text"));
}

TEST(IngestTest, EmptyStream) {
  std::istringstream in("");
  IngestResult result = IngestJsonLines(in, "p");
  EXPECT_THAT(result.reviews, IsEmpty());
  EXPECT_THAT(result.errors, IsEmpty());
  CorpusStats stats = ComputeStats("p", result.reviews, 0);
  EXPECT_EQ(stats.review_count, 0);
  EXPECT_EQ(stats.female_count, 0);
  EXPECT_EQ(stats.male_count, 0);
  EXPECT_EQ(stats.sentence_count, 0);
}

TEST(IngestTest, RejectsBadFields) {
  std::istringstream in(
      R"({"id":"a","text":"x","rating":9,"likes":1})" "\n"
      R"({"id":"b","text":"x","rating":3,"likes":-1})" "\n"
      R"({"id":"c","text":"   ","rating":3,"likes":1})" "\n"
      R"({"id":"d","text":"x","rating":3,"likes":1,"gender":"Q"})" "\n"
      "not json\n"
      R"({"id":"e","text":"x","rating":3,"likes":1})" "\n"
      R"({"id":"e","text":"y","rating":3,"likes":1})" "\n");
  IngestResult result = IngestJsonLines(in, "p");
  EXPECT_EQ(result.reviews.size(), 1u);
  ASSERT_EQ(result.errors.size(), 6u);
  EXPECT_EQ(result.errors[4].line, 5);
  EXPECT_EQ(result.errors[5].line, 7);
}

TEST(IngestTest, OtherPlacesAreCountedNotErrors) {
  std::istringstream in(
      R"({"id":"a","place":"p","text":"x.","rating":3,"likes":1})" "\n"
      R"({"id":"b","place":"q","text":"y.","rating":3,"likes":1})" "\n");
  IngestResult result = IngestJsonLines(in, "p");
  EXPECT_EQ(result.reviews.size(), 1u);
  EXPECT_THAT(result.errors, IsEmpty());
  EXPECT_EQ(result.other_place_records, 1);
}

TEST(IngestTest, CsvMatchesJsonLines) {
  std::istringstream csv(
      "id,place,text,rating,likes,username,gender,country\n"
      "a,p,\"Great, really. Go \"\"early\"\"!\",5,3,ana,F,Italy\n"
      "b,p,Crowded.,2,0,bo,M,\n");
  std::istringstream jsonl(
      R"({"id":"a","place":"p","text":"Great, really. Go \"early\"!","rating":5,"likes":3,"username":"ana","gender":"F","country":"Italy"})"
      "\n"
      R"({"id":"b","place":"p","text":"Crowded.","rating":2,"likes":0,"username":"bo","gender":"M"})"
      "\n");
  IngestResult a = IngestCsv(csv, "p");
  IngestResult b = IngestJsonLines(jsonl, "p");
  ASSERT_THAT(a.errors, IsEmpty());
  ASSERT_EQ(a.reviews.size(), b.reviews.size());
  for (size_t i = 0; i < a.reviews.size(); ++i) {
    EXPECT_EQ(a.reviews[i].text, b.reviews[i].text);
    EXPECT_EQ(a.reviews[i].likes, b.reviews[i].likes);
    EXPECT_EQ(a.reviews[i].gender, b.reviews[i].gender);
    EXPECT_EQ(a.reviews[i].country, b.reviews[i].country);
  }
}

TEST(CorpusTest, StatsMatchRecount) {
  std::ifstream in(testing::DeskFixture());
  IngestResult result = IngestJsonLines(in, "");
  Corpus corpus = Corpus::Build(result.reviews, Resources());
  EXPECT_THAT(corpus.Places(), ElementsAre("colosseum", "taj-mahal"));
  for (const std::string& place : corpus.Places()) {
    const PlaceCorpus* pc = corpus.Find(place);
    int f = 0, m = 0, u = 0, n = 0;
    for (const Review& r : result.reviews) {
      if (r.place != place) continue;
      ++n;
      if (r.gender == Gender::kFemale) ++f;
      if (r.gender == Gender::kMale) ++m;
      if (r.gender == Gender::kUnknown) ++u;
    }
    EXPECT_EQ(pc->stats().review_count, n);
    EXPECT_EQ(pc->stats().female_count, f);
    EXPECT_EQ(pc->stats().male_count, m);
    EXPECT_EQ(pc->stats().unknown_count, u);
    EXPECT_EQ(pc->stats().sentence_count,
              static_cast<int>(pc->sentences().size()));
  }
  EXPECT_EQ(corpus.Find("nowhere"), nullptr);
}

TEST(CorpusTest, DeterministicIds) {
  std::ifstream a(testing::DeskFixture());
  std::ifstream b(testing::DeskFixture());
  Corpus x = Corpus::Build(IngestJsonLines(a, "").reviews, Resources());
  Corpus y = Corpus::Build(IngestJsonLines(b, "").reviews, Resources());
  const auto& sx = x.Find("colosseum")->sentences();
  const auto& sy = y.Find("colosseum")->sentences();
  ASSERT_EQ(sx.size(), sy.size());
  for (size_t i = 0; i < sx.size(); ++i) EXPECT_EQ(sx[i].id, sy[i].id);
}

TEST(IndexTest, RoundTrip) {
  testing::ScratchDir dir("index");
  std::ifstream in(testing::DeskFixture());
  std::vector<Review> reviews = IngestJsonLines(in, "colosseum").reviews;
  const auto path = dir.path() / "places" / "colosseum.corpus";
  ASSERT_TRUE(WritePlaceIndex(path, reviews).ok());
  auto back = ReadPlaceIndex(path);
  ASSERT_TRUE(back.ok()) << back.status();
  ASSERT_EQ(back->size(), reviews.size());
  for (size_t i = 0; i < reviews.size(); ++i) {
    EXPECT_EQ((*back)[i].id, reviews[i].id);
    EXPECT_EQ((*back)[i].text, reviews[i].text);
    EXPECT_EQ((*back)[i].gender, reviews[i].gender);
    EXPECT_EQ((*back)[i].likes, reviews[i].likes);
  }
  std::ifstream raw(path);
  std::string first;
  std::getline(raw, first);
  EXPECT_EQ(first, kCorpusIndexMagic);
}

TEST(IndexTest, RejectsWrongMagic) {
  testing::ScratchDir dir("magic");
  const auto path = dir.path() / "x.corpus";
  std::ofstream(path) << "OPSUM-CORPUS 99\n";
  EXPECT_FALSE(ReadPlaceIndex(path).ok());
  EXPECT_FALSE(ReadIndexDirectory(dir.path() / "missing").ok());
}

TEST(GenderCountTest, GenderCountsPerPlace) {
  const std::vector<std::tuple<std::string, int, int>> expected = {
      {"colosseum", 492, 508},    {"christ-the-redeemer", 445, 555},
      {"machu-picchu", 456, 544}, {"petra", 439, 561},
      {"taj-mahal", 398, 602},    {"chichen-itza", 482, 518},
      {"great-wall", 452, 548}};
  for (const auto& [place, female, male] : expected) {
    std::ifstream in(testing::FixtureDir() / "seven_places" / (place + ".jsonl"));
    IngestResult result = IngestJsonLines(in, place);
    ASSERT_THAT(result.errors, IsEmpty());
    CorpusStats stats = ComputeStats(place, result.reviews, 0);
    EXPECT_EQ(stats.review_count, 1000) << place;
    EXPECT_EQ(stats.female_count, female) << place;
    EXPECT_EQ(stats.male_count, male) << place;
  }
}

}  // namespace
}  // namespace opsum
