#pragma once

#include <string>

#include "owa/rdf/n3.hpp"

// Vocabulary of the Open Web Archive layers.
namespace owa::vocab {

inline const std::string kOwa = "http://l3s.de/owa/core#";
inline const std::string kOae = "http://www.ics.forth.gr/isl/oae/core#";
inline const std::string kDc = "http://purl.org/dc/terms/";
inline const std::string kSchema = "http://schema.org/";
inline const std::string kTw = "http://www.openlinksw.com/schemas/twitter#";
inline const std::string kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline const std::string kXsd = "http://www.w3.org/2001/XMLSchema#";
inline const std::string kOwl = "http://www.w3.org/2002/07/owl#";
inline const std::string kOa = "http://www.w3.org/ns/oa#";

inline const std::string kRdfType = kRdf + "type";
inline const std::string kOwlSameAs = kOwl + "sameAs";

inline const std::string kArchivedDocument = kOwa + "ArchivedDocument";
inline const std::string kVersionedDocument = kOwa + "VersionedDocument";
inline const std::string kFirstCapture = kOwa + "firstCapture";
inline const std::string kLastCapture = kOwa + "lastCapture";
inline const std::string kNumOfCaptures = kOwa + "numOfCaptures";

inline const std::string kDcDate = kDc + "date";
inline const std::string kDcTitle = kDc + "title";
inline const std::string kDcFormat = kDc + "format";
inline const std::string kDcReferences = kDc + "references";
inline const std::string kDcHasVersion = kDc + "hasVersion";
inline const std::string kDcCreator = kDc + "creator";

inline const std::string kMentions = kSchema + "mentions";
inline const std::string kSchemaText = kSchema + "text";

inline const std::string kOaeEntity = kOae + "Entity";
inline const std::string kOaeConfidence = kOae + "confidence";
inline const std::string kOaeDetectedAs = kOae + "detectedAs";
inline const std::string kOaePosition = kOae + "position";
inline const std::string kOaeHasMatchedUri = kOae + "hasMatchedURI";

inline const std::string kTweet = kTw + "Tweet";
inline const std::string kRetweetCount = kTw + "retweetCount";
inline const std::string kFavoriteCount = kTw + "favoriteCount";

inline const std::string kOaAnnotation = kOa + "Annotation";
inline const std::string kOaHasTarget = kOa + "hasTarget";
inline const std::string kOaHasBody = kOa + "hasBody";

inline const std::string kXsdString = kXsd + "string";
inline const std::string kXsdDate = kXsd + "date";
inline const std::string kXsdDateTime = kXsd + "dateTime";
inline const std::string kXsdInteger = kXsd + "integer";
inline const std::string kXsdDouble = kXsd + "double";
inline const std::string kXsdBoolean = kXsd + "boolean";

// The layer files spell DCMI Terms as "dc:"; every query listing does the
// same, and prefix names carry no semantics once expanded.
inline rdf::PrefixMap layer_prefixes() {
    return {
        {"dc", kDc},   {"oae", kOae},       {"owa", kOwa}, {"owl", kOwl},
        {"rdf", kRdf}, {"schema", kSchema}, {"tw", kTw},   {"xsd", kXsd},
    };
}

inline rdf::PrefixMap layer_prefixes_with_oa() {
    auto p = layer_prefixes();
    p.emplace("oa", kOa);
    return p;
}

}  // namespace owa::vocab
