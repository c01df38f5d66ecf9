"""Generate the bundled sample corpora.

    python tools/make_corpus.py            # writes src/bnbpe/data/

Produces
  sample_corpus.txt     normalized news-style sentences, one per line
  synthetic_news.jsonl  8 categories x 250 raw documents ({"text", "label"})

Both are seeded and byte-stable. The text is template-generated from a
hand-written news vocabulary with regular Bengali inflection (genitive,
locative, objective, plural, classifier suffixes), sentence-level noise in the
labeled set (digits, Latin words, URLs, HTML) to exercise the cleaner, and a
long tail of compounds and proper names so the word distribution is Zipf-like
rather than a closed list.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from bnbpe.normalizer import clean  # noqa: E402

KARS = set("ািীুূৃেৈোৌ")


def ends_in_vowel(stem: str) -> bool:
    return stem[-1] in KARS or stem[-1] in "অআইঈউঊএঐওঔ"


def genitive(stem):
    return stem + ("র" if ends_in_vowel(stem) else "ের")


def locative(stem):
    if stem.endswith("া"):
        return stem + "য়"
    if ends_in_vowel(stem):
        return stem + "তে"
    return stem + "ে"


def objective(stem):
    return stem + "কে"


def plural_human(stem):
    return stem + "রা" if ends_in_vowel(stem) else stem + "েরা"


def plural_thing(stem):
    return stem + random.choice(["গুলো", "গুলি"])


def classifier(stem):
    return stem + random.choice(["টি", "টা"])


TOPICS = {
    "politics": {
        "human": "নেতা মন্ত্রী প্রধানমন্ত্রী কর্মী সমর্থক প্রার্থী ভোটার রাষ্ট্রপতি মুখপাত্র সাংসদ মেয়র কাউন্সিলর".split(),
        "thing": (
            "সরকার নির্বাচন দল সংসদ আইন প্রস্তাব বিল জোট ভোট কমিশন সমাবেশ আন্দোলন মন্ত্রণালয় "
            "বৈঠক নীতি ক্ষমতা সংবিধান গণতন্ত্র রাজনীতি প্রচারণা মনোনয়ন আসন হরতাল অধিবেশন"
        ).split(),
        "verb": [
            "বলেছেন", "অভিযোগ করেছেন", "দাবি জানিয়েছেন", "ঘোষণা করেছেন", "সমালোচনা করেছেন",
            "আহ্বান জানিয়েছেন", "বৈঠক করেছেন", "প্রত্যাখ্যান করেছে", "অনুমোদন দিয়েছে", "পাস হয়েছে",
            "প্রতিবাদ জানিয়েছেন", "মনোনয়নপত্র জমা দিয়েছেন",
        ],
        "adj": "রাজনৈতিক নির্বাচনী সংসদীয় ক্ষমতাসীন বিরোধী দলীয় সরকারি".split(),
    },
    "sports": {
        "human": "খেলোয়াড় অধিনায়ক কোচ দর্শক ব্যাটসম্যান বোলার গোলরক্ষক ক্রিকেটার ফুটবলার আম্পায়ার সমর্থক".split(),
        "thing": (
            "ম্যাচ দল টুর্নামেন্ট বিশ্বকাপ সিরিজ গোল উইকেট রান মাঠ স্টেডিয়াম শিরোপা ফাইনাল জয় "
            "পরাজয় ইনিংস অনুশীলন লিগ ক্রিকেট ফুটবল সেঞ্চুরি টেস্ট হকি অলিম্পিক পদক"
        ).split(),
        "verb": [
            "জয় পেয়েছে", "হেরেছে", "গোল করেছেন", "সেঞ্চুরি করেছেন", "অংশ নেবে", "শিরোপা জিতেছে",
            "ড্র করেছে", "মাঠে নামবে", "দলে ফিরেছেন", "অবসর নিয়েছেন", "উইকেট নিয়েছেন", "সেমিফাইনালে উঠেছে",
        ],
        "adj": "ঘরোয়া আন্তর্জাতিক রোমাঞ্চকর টানা শক্তিশালী তরুণ অভিজ্ঞ".split(),
    },
    "economy": {
        "human": "ব্যবসায়ী বিনিয়োগকারী রপ্তানিকারক গ্রাহক ক্রেতা অর্থমন্ত্রী গভর্নর অর্থনীতিবিদ উদ্যোক্তা শ্রমিক".split(),
        "thing": (
            "বাজার অর্থনীতি মূল্যস্ফীতি রপ্তানি আমদানি বাজেট ব্যাংক ঋণ শেয়ার সূচক রাজস্ব কর প্রবৃদ্ধি "
            "মুদ্রা ডলার টাকা দাম বিনিয়োগ শিল্প পোশাকশিল্প রেমিট্যান্স রিজার্ভ মুনাফা লেনদেন"
        ).split(),
        "verb": [
            "বৃদ্ধি পেয়েছে", "কমেছে", "বেড়েছে", "স্থিতিশীল রয়েছে", "ঘোষণা করেছে", "অনুমোদন করেছে",
            "লেনদেন হয়েছে", "হ্রাস পেয়েছে", "উদ্বেগ জানিয়েছেন", "পূর্বাভাস দিয়েছে", "সুদহার বাড়িয়েছে",
        ],
        "adj": "অর্থনৈতিক আর্থিক বাণিজ্যিক সামষ্টিক বৈদেশিক স্থানীয় বার্ষিক".split(),
    },
    "entertainment": {
        "human": "অভিনেতা অভিনেত্রী পরিচালক শিল্পী গায়ক গায়িকা প্রযোজক নির্মাতা দর্শক নায়ক নায়িকা সংগীতশিল্পী".split(),
        "thing": (
            "চলচ্চিত্র সিনেমা নাটক গান অ্যালবাম পুরস্কার উৎসব মঞ্চ চরিত্র শুটিং ছবি কনসার্ট "
            "প্রেক্ষাগৃহ ওয়েবসিরিজ চিত্রনাট্য সংগীত নৃত্য টেলিভিশন বিনোদন"
        ).split(),
        "verb": [
            "মুক্তি পেয়েছে", "অভিনয় করেছেন", "প্রকাশিত হয়েছে", "পুরস্কার পেয়েছেন", "গান গেয়েছেন",
            "শুটিং শুরু করেছেন", "প্রশংসা পেয়েছে", "দর্শকপ্রিয়তা পেয়েছে", "মঞ্চস্থ হয়েছে", "মনোনীত হয়েছেন",
        ],
        "adj": "জনপ্রিয় আলোচিত নতুন ব্যবসাসফল পারিবারিক রোমান্টিক সাংস্কৃতিক".split(),
    },
    "education": {
        "human": "শিক্ষার্থী শিক্ষক ছাত্র ছাত্রী অভিভাবক উপাচার্য পরীক্ষার্থী অধ্যাপক প্রধানশিক্ষক গবেষক".split(),
        "thing": (
            "বিশ্ববিদ্যালয় বিদ্যালয় পরীক্ষা ফলাফল শিক্ষা পাঠ্যক্রম ক্লাস বৃত্তি ভর্তি কলেজ মাদ্রাসা "
            "শিক্ষাবোর্ড পাঠ্যবই গবেষণা ডিগ্রি সমাবর্তন প্রশ্নপত্র ক্যাম্পাস গ্রন্থাগার সিলেবাস"
        ).split(),
        "verb": [
            "অংশ নিয়েছে", "প্রকাশিত হয়েছে", "শুরু হয়েছে", "উত্তীর্ণ হয়েছে", "ভর্তি হয়েছে",
            "স্থগিত করা হয়েছে", "বিতরণ করা হয়েছে", "পাঠদান করছেন", "আবেদন করেছে", "মূল্যায়ন করা হবে",
        ],
        "adj": "মাধ্যমিক উচ্চমাধ্যমিক প্রাথমিক শিক্ষাগত একাডেমিক সরকারি বেসরকারি".split(),
    },
    "national": {
        "human": "নাগরিক বাসিন্দা পুলিশ কৃষক শ্রমিক গ্রামবাসী ভুক্তভোগী কর্মকর্তা চিকিৎসক স্বেচ্ছাসেবক যাত্রী".split(),
        "thing": (
            "জেলা উপজেলা গ্রাম সড়ক দুর্ঘটনা বন্যা ঘূর্ণিঝড় হাসপাতাল সেতু নদী প্রকল্প ত্রাণ এলাকা শহর "
            "মামলা আদালত রাজধানী ঢাকা চট্টগ্রাম সিলেট রাজশাহী খুলনা বরিশাল রংপুর ময়মনসিংহ কুমিল্লা"
        ).split(),
        "verb": [
            "ক্ষতিগ্রস্ত হয়েছে", "উদ্ধার করা হয়েছে", "নিহত হয়েছেন", "আহত হয়েছেন", "গ্রেপ্তার করেছে",
            "উদ্বোধন করা হয়েছে", "নির্মাণ করা হচ্ছে", "বিতরণ করা হয়েছে", "ভোগান্তিতে পড়েছেন", "রায় দিয়েছেন",
        ],
        "adj": "স্থানীয় জাতীয় উপকূলীয় গ্রামীণ শহুরে দুর্গত প্রশাসনিক".split(),
    },
    "international": {
        "human": "রাষ্ট্রদূত প্রেসিডেন্ট শরণার্থী কূটনীতিক সেনা পররাষ্ট্রমন্ত্রী মহাসচিব বিশ্লেষক বিক্ষোভকারী".split(),
        "thing": (
            "যুক্তরাষ্ট্র ভারত চীন জাতিসংঘ ইউরোপ রাশিয়া ইউক্রেন মিয়ানমার যুদ্ধ চুক্তি সম্মেলন নিষেধাজ্ঞা "
            "সীমান্ত পররাষ্ট্রনীতি আলোচনা বিশ্ব সংকট হামলা সম্পর্ক জাপান ফ্রান্স জার্মানি সৌদি"
        ).split(),
        "verb": [
            "সফর করেছেন", "বৈঠকে বসেছেন", "নিষেধাজ্ঞা আরোপ করেছে", "উদ্বেগ প্রকাশ করেছে",
            "চুক্তি স্বাক্ষর করেছে", "হামলা চালিয়েছে", "নিন্দা জানিয়েছে", "যুদ্ধবিরতির আহ্বান জানিয়েছে",
            "সমর্থন দিয়েছে", "প্রতিনিধি পাঠিয়েছে",
        ],
        "adj": "আন্তর্জাতিক কূটনৈতিক আঞ্চলিক বৈশ্বিক দ্বিপক্ষীয় সামরিক মানবিক".split(),
    },
    "science_technology": {
        "human": "বিজ্ঞানী গবেষক প্রকৌশলী ব্যবহারকারী উদ্যোক্তা প্রোগ্রামার জ্যোতির্বিজ্ঞানী চিকিৎসাবিজ্ঞানী হ্যাকার".split(),
        "thing": (
            "প্রযুক্তি মোবাইল ইন্টারনেট স্মার্টফোন কম্পিউটার সফটওয়্যার উপগ্রহ গবেষণা আবিষ্কার যন্ত্র "
            "অ্যাপ তথ্য নেটওয়ার্ক নিরাপত্তা মহাকাশ রোবট ব্যাটারি টিকা জিনোম ল্যাবরেটরি প্রোটোটাইপ অ্যালগরিদম"
        ).split(),
        "verb": [
            "উদ্ভাবন করেছেন", "চালু করেছে", "উন্মোচন করেছে", "উৎক্ষেপণ করা হয়েছে", "আবিষ্কার করেছেন",
            "ব্যবহার করছেন", "উন্নয়ন করেছে", "পরীক্ষা চালিয়েছেন", "প্রকাশ করেছেন", "হালনাগাদ করেছে",
        ],
        "adj": "ডিজিটাল বৈজ্ঞানিক প্রযুক্তিগত উন্নত স্বয়ংক্রিয় কৃত্রিম আধুনিক".split(),
    },
}

TIMES = ["গতকাল", "আজ", "সোমবার", "মঙ্গলবার", "বুধবার", "বৃহস্পতিবার", "শুক্রবার", "শনিবার", "রবিবার",
         "সম্প্রতি", "গত সপ্তাহে", "চলতি মাসে", "গত বছর", "আগামী মাসে", "দুপুরে", "সন্ধ্যায়"]
OPENERS = ["এ সময়", "এক বিবৃতিতে", "সংবাদ সম্মেলনে", "সূত্র জানায়", "এর ফলে", "তবে", "এছাড়া",
           "অন্যদিকে", "জানা গেছে", "প্রতিবেদনে বলা হয়েছে"]
GENERAL_ADJ = "নতুন বড় গুরুত্বপূর্ণ বিভিন্ন সাধারণ প্রথম সর্বোচ্চ বিশেষ দীর্ঘ সাম্প্রতিক ব্যাপক".split()
GENERAL_THING = "দেশ বাংলাদেশ মানুষ সমাজ পরিস্থিতি উদ্যোগ সিদ্ধান্ত পরিকল্পনা প্রতিবেদন অনুষ্ঠান".split()
POSTPOS = ["নিয়ে", "সম্পর্কে", "বিষয়ে", "জন্য", "ব্যাপারে", "পক্ষে", "বিরুদ্ধে"]
TAILS = ["বলে জানা গেছে", "বলে জানিয়েছেন সংশ্লিষ্টরা", "বলে মনে করছেন বিশেষজ্ঞরা", "বলে সূত্র জানিয়েছে"]

# proper names for the long tail; combined pairwise into compounds below
NAMES = (
    "রহিম করিম ফাতেমা আয়েশা সুমন রাকিব তানভীর নুসরাত শাকিল মাহমুদ রফিক জাহিদ সাবিনা মৌসুমী "
    "আরিফ শফিক কামাল জামাল নাসির হাসান রুবিনা শারমিন মিজান আলমগীর"
).split()
PLACES = "পদ্মা মেঘনা যমুনা সুন্দরবন কক্সবাজার গাজীপুর নারায়ণগঞ্জ টাঙ্গাইল বগুড়া দিনাজপুর পাবনা যশোর".split()
COMPOUND_HEADS = "ভাষা জন দেশ বিশ্ব লোক রাজ্য সমাজ নগর জল বন".split()
COMPOUND_TAILS = "ভাষী বাসী প্রেমী সেবী কর্মী প্রধান নীতি তন্ত্র পতি বিদ".split()

PLURAL_FORMS = ["বাংলাভাষাভাষীরা", "ভাষাভাষীরা", "বাংলাভাষীরা", "দেশবাসীরা", "প্রবাসীরা", "বিশ্ববাসীরা"]
CULTURE = [
    "{pl} {adj} উৎসবে অংশ নেন।",
    "বিশ্বের {pl} এই দিনটি উদযাপন করেন।",
    "{pl} {thing} নিয়ে গর্বিত।",
    "বাংলা {pl2} গর্বিত।",
    "{pl} {time} শহিদ মিনারে শ্রদ্ধা জানান।",
]


def noun_form(stem, human):
    r = random.random()
    if human:
        if r < 0.30:
            return plural_human(stem)
        if r < 0.45:
            return genitive(stem)
        if r < 0.55:
            return objective(stem)
        return stem
    if r < 0.30:
        return genitive(stem)
    if r < 0.50:
        return locative(stem)
    if r < 0.58:
        return plural_thing(stem)
    if r < 0.66:
        return classifier(stem)
    return stem


def zipf_choice(items, s=1.1):
    weights = [1.0 / (i + 1) ** s for i in range(len(items))]
    return random.choices(items, weights)[0]


def long_tail_word():
    r = random.random()
    if r < 0.35:
        return genitive(random.choice(NAMES)) if random.random() < 0.5 else random.choice(NAMES)
    if r < 0.6:
        return noun_form(random.choice(PLACES), False)
    head = random.choice(COMPOUND_HEADS)
    tail = random.choice(COMPOUND_TAILS)
    word = head + tail
    return plural_human(word) if random.random() < 0.5 else genitive(word)


def topic_sentence(topic):
    v = TOPICS[topic]
    parts = []
    if random.random() < 0.45:
        parts.append(random.choice(TIMES))
    if random.random() < 0.2:
        parts.insert(0, random.choice(OPENERS) + ",")
    if random.random() < 0.5:
        parts.append(random.choice(v["adj"] + GENERAL_ADJ))
    parts.append(genitive(zipf_choice(v["thing"])) if random.random() < 0.7 else genitive(random.choice(GENERAL_THING)))
    parts.append(noun_form(zipf_choice(v["human"]), True))
    if random.random() < 0.35:
        parts.append(long_tail_word())
    if random.random() < 0.6:
        parts.append(noun_form(zipf_choice(v["thing"]), False))
        if random.random() < 0.5:
            parts.append(random.choice(POSTPOS))
    parts.append(random.choice(v["verb"]))
    if random.random() < 0.15:
        parts.append(random.choice(TAILS))
    sentence = " ".join(parts)
    return sentence + random.choice(["।", "।", "।", "।", "।", "!"])


def general_sentence():
    if random.random() < 0.5:
        tpl = random.choice(CULTURE)
        return tpl.format(
            pl=random.choice(PLURAL_FORMS),
            pl2="ভাষাভাষীরা",
            adj=random.choice(GENERAL_ADJ),
            thing=random.choice(["মাতৃভাষা", "সংস্কৃতি", "ইতিহাস", "ঐতিহ্য", "সাহিত্য"]),
            time=random.choice(TIMES),
        )
    topic = random.choice(list(TOPICS))
    return topic_sentence(topic)


def add_noise(text):
    r = random.random()
    if r < 0.15:
        text += f" {random.randint(1, 2025)} সালে"
    elif r < 0.25:
        text += " " + "".join(random.choice("০১২৩৪৫৬৭৮৯") for _ in range(random.randint(1, 4)))
    elif r < 0.32:
        text += " বিস্তারিত: https://example.com/news/" + str(random.randint(100, 999))
    elif r < 0.38:
        text = "<p>" + text + "</p>"
    elif r < 0.44:
        text += " " + random.choice(["AI", "GDP", "FIFA", "ICC", "UN", "IMF", "COVID-19"])
    elif r < 0.48:
        text += " \U0001F600"
    return text


def make_sample_corpus(n):
    lines = []
    topics = list(TOPICS)
    for i in range(n):
        if random.random() < 0.12:
            s = general_sentence()
        else:
            s = topic_sentence(topics[i % len(topics)])
        c = clean(s).content
        if c:
            lines.append(c)
    return lines


def make_labeled(per_class):
    docs = []
    for topic in TOPICS:
        for _ in range(per_class):
            k = random.randint(3, 7)
            sents = []
            for _ in range(k):
                if random.random() < 0.25:
                    sents.append(general_sentence())
                else:
                    sents.append(topic_sentence(topic))
            docs.append({"text": add_noise("   ".join(sents)), "label": topic})
    random.shuffle(docs)
    return docs


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--out-dir", default=str(Path(__file__).resolve().parents[1] / "src" / "bnbpe" / "data"))
    ap.add_argument("--sentences", type=int, default=2400)
    ap.add_argument("--per-class", type=int, default=250)
    ap.add_argument("--seed", type=int, default=20240521)
    args = ap.parse_args(argv)

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    random.seed(args.seed)
    lines = make_sample_corpus(args.sentences)
    (out / "sample_corpus.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")
    random.seed(args.seed + 1)
    docs = make_labeled(args.per_class)
    with open(out / "synthetic_news.jsonl", "w", encoding="utf-8", newline="\n") as f:
        for d in docs:
            f.write(json.dumps(d, ensure_ascii=False) + "\n")
    print(f"{len(lines)} sentences, {len(docs)} labeled documents -> {out}")


if __name__ == "__main__":
    main()
