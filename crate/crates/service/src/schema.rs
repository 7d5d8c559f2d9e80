use axum::Json;
use serde_json::{json, Value};

fn string(desc: &str) -> Value {
    json!({ "type": "string", "description": desc })
}

/// JSON Schemas for every request and response body, keyed by route.
pub async fn schema() -> Json<Value> {
    let ruleset = string("ruleset text, e.g. \"ECN(6_{1,2},3)\", \"MN(5,2)\", \"NIM(3)\"");
    let position = string("comma-separated pile heights, e.g. \"1,2,0,3\"");
    let outcome = json!({ "enum": ["P", "N"] });
    let position_req = json!({
        "type": "object",
        "required": ["ruleset", "position"],
        "additionalProperties": false,
        "properties": { "ruleset": ruleset, "position": position }
    });
    let pair = json!({ "type": "array", "prefixItems": [{ "type": "integer", "minimum": 0 }, { "type": "integer", "minimum": 1 }], "minItems": 2, "maxItems": 2 });
    let mv = json!({
        "type": "object",
        "required": ["face", "removals", "result"],
        "properties": {
            "face": { "type": "array", "items": { "type": "integer", "minimum": 0 } },
            "removals": { "type": "array", "items": pair },
            "result": position
        }
    });
    let session = json!({
        "type": "object",
        "required": ["id", "ruleset", "initial", "position", "history", "outcome", "game_over"],
        "properties": {
            "id": string("session id"),
            "ruleset": ruleset,
            "initial": position,
            "position": position,
            "history": { "type": "array", "items": {
                "type": "object",
                "required": ["by", "move"],
                "properties": { "by": { "enum": ["human", "engine"] }, "move": mv }
            }},
            "outcome": outcome,
            "game_over": { "type": "boolean" }
        }
    });
    let error = json!({ "type": "object", "required": ["error"], "properties": { "error": { "type": "string" } } });
    Json(json!({
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "errors": {
            "400": "malformed body, ruleset or position",
            "404": "unknown session",
            "409": "illegal move; the message names the violated face or height constraint",
            "422": "budget exceeded on an unsolved ruleset",
            "body": error
        },
        "routes": {
            "GET /rulesets": { "response": { "type": "array", "items": {
                "type": "object",
                "required": ["ruleset", "resolution", "detail"],
                "properties": { "ruleset": ruleset, "resolution": string("resolution tag"), "detail": string("resolution in words") }
            }}},
            "POST /evaluate": {
                "request": position_req,
                "response": { "type": "object", "required": ["outcome", "method"], "properties": {
                    "outcome": outcome,
                    "method": { "type": "array", "items": { "type": "string" } },
                    "grundy": { "type": "integer", "description": "present when the answer came from the oracle" }
                }}
            },
            "POST /moves": {
                "request": {
                    "type": "object",
                    "required": ["ruleset", "position"],
                    "additionalProperties": false,
                    "properties": { "ruleset": ruleset, "position": position, "cursor": string("next_cursor from the previous page") }
                },
                "response": { "type": "object", "required": ["total", "moves", "next_cursor"], "properties": {
                    "total": { "type": "integer" },
                    "moves": { "type": "array", "maxItems": crate::PAGE_SIZE, "items": mv },
                    "next_cursor": { "type": ["string", "null"] }
                }}
            },
            "POST /bestmove": {
                "request": position_req,
                "response": { "type": "object", "required": ["outcome"], "properties": {
                    "outcome": outcome, "move": mv, "position": position
                }}
            },
            "POST /sessions": { "request": position_req, "response": session },
            "GET /sessions/{id}": { "response": session },
            "POST /sessions/{id}/move": {
                "request": { "type": "object", "required": ["removals"], "additionalProperties": false, "properties": { "removals": { "type": "array", "items": pair } } },
                "response": session
            },
            "POST /sessions/{id}/engine-move": {
                "response": { "type": "object", "required": ["choice", "move", "session"], "properties": {
                    "choice": { "type": "object", "required": ["kind"], "properties": {
                        "kind": { "enum": ["winning", "resistance", "smallest"] },
                        "opponent_winning_moves": { "type": "integer" }
                    }},
                    "move": mv,
                    "session": session
                }}
            }
        }
    }))
}
