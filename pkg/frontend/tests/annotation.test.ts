import { describe, expect, it } from "vitest";

import { renderAnnotatedText, segmentArticle, stripMarkup } from "../src/annotation.js";
import { entity, fixturePayload, FIXTURE_TEXT } from "./mock.js";

describe("annotated text view model", () => {
  it("segments partition the article text exactly", () => {
    const payload = fixturePayload();
    const segments = segmentArticle(payload.text, payload.entities);
    expect(segments.map((s) => s.text).join("")).toBe(payload.text);
    expect(segments.filter((s) => s.kind === "entity")).toHaveLength(3);
  });

  it("stripping the rendered markup reproduces the text byte for byte", () => {
    const payload = fixturePayload();
    const root = renderAnnotatedText(document, payload);
    expect(stripMarkup(root)).toBe(FIXTURE_TEXT);
  });

  it("round-trips with zero entities and with unicode-only text", () => {
    const text = "«Газпром» объявил о сделке। End.";
    const root = renderAnnotatedText(document, { text, entities: [] });
    expect(stripMarkup(root)).toBe(text);
  });

  it("skips overlapping entities instead of corrupting the text", () => {
    const text = "abcdefghij";
    const overlapping = [
      entity("abcde", 0, "Protagonist", [["Guardian", 0.9]]),
      entity("cdefg", 2, "Antagonist", [["Tyrant", 0.9]]),
    ];
    const root = renderAnnotatedText(document, { text, entities: overlapping });
    expect(stripMarkup(root)).toBe(text);
  });

  it("every displayed number is traceable to the API payload", () => {
    const payload = fixturePayload();
    const root = renderAnnotatedText(document, payload);
    const marks = root.querySelectorAll("mark.entity");
    expect(marks).toHaveLength(3);
    const first = marks[0] as HTMLElement;
    expect(first.dataset.mainRole).toBe("Protagonist");
    expect(JSON.parse(first.dataset.fineRoles!)).toEqual(
      payload.entities[0].fine_roles,
    );
    expect(first.title).toContain("92.0%");
    expect(first.title).toContain("Guardian");
  });

  it("marks repeats with a data attribute without changing the text", () => {
    const payload = fixturePayload();
    const root = renderAnnotatedText(document, payload);
    const repeats = root.querySelectorAll("mark[data-repeat]");
    expect(repeats).toHaveLength(1);
    expect(stripMarkup(root)).toBe(payload.text);
  });
});
