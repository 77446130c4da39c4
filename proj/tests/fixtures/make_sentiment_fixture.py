#!/usr/bin/env python3
"""Writes sentiment_2000.csv: 1,000 negative + 1,000 positive synthetic tweets
in the six-column polarity corpus layout (polarity,id,date,query,user,text).

The file is checked in; this script documents how it was produced.
Run: python3 tests/fixtures/make_sentiment_fixture.py > tests/fixtures/sentiment_2000.csv
"""
import csv
import random
import sys

POSITIVE = """love loving loved great awesome amazing happy glad excited thanks thank
wonderful beautiful best fun enjoy enjoyed nice good perfect cool lovely yay
pleased welcome congrats congratulations proud smile smiling laugh sweet fantastic
brilliant excellent win winning won hope hopeful grateful blessed cheers favorite
nominated vip delighted adorable super""".split()

NEGATIVE = """hate hated sad sadly awful terrible horrible bad worst sick tired miss
missing lonely cry crying broke broken hurt hurts pain angry annoyed annoying upset
sucks boring bored stupid fail failed failing lost lose ugh sorry crashing crashed
disappointed depressing depressed worried scared ill headache rain damn poor
unfortunately""".split()

NEUTRAL = """today tonight tomorrow morning work school home house day night week
weekend friends family phone computer car bus train coffee lunch dinner movie show
game music song book class office city weather time going back watching reading
listening waiting getting still first last new old little big everyone people
twitter video picture pics news party trip beach store""".split()

NAMES = "john mary alex sam emma mike sarah dave lisa tom kate chris".split()


def tweet(rng, positive):
    own, other = (POSITIVE, NEGATIVE) if positive else (NEGATIVE, POSITIVE)
    n = rng.randint(6, 14)
    words = []
    for _ in range(n):
        r = rng.random()
        if r < 0.16:
            words.append(rng.choice(own))
        elif r < 0.23:
            words.append(rng.choice(other))
        elif r < 0.30:
            words.append(rng.choice(["i", "the", "a", "is", "to", "my", "and", "it", "so"]))
        else:
            words.append(rng.choice(NEUTRAL))
    if rng.random() < 0.3:
        words.insert(0, "@" + rng.choice(NAMES))
    if rng.random() < 0.2:
        words.append("http://bit.ly/" + "".join(rng.choice("abcxyz123") for _ in range(5)))
    if rng.random() < 0.3:
        i = rng.randrange(len(words))
        words[i] = words[i].upper()
    text = " ".join(words)
    text += rng.choice(["", "!", "!!", ".", " :)", " :(", "...", "?"])
    return text


def main():
    rng = random.Random(20260419)
    rows = []
    for i in range(2000):
        positive = i % 2 == 1
        # ~10% of rows carry the opposite sentiment, as in noisy real labels.
        flip = rng.random() < 0.10
        text = tweet(rng, positive != flip)
        polarity = 4 if positive else 0
        rows.append([polarity, 1467810369 + i, "Mon Apr 06 22:19:45 PDT 2009",
                     "NO_QUERY", rng.choice(NAMES) + str(rng.randint(1, 999)), text])
    w = csv.writer(sys.stdout, quoting=csv.QUOTE_ALL, lineterminator="\n")
    w.writerows(rows)


if __name__ == "__main__":
    main()
