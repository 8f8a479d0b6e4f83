import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "jsdom",
    include: ["tests/**/*.test.ts"],
    // Each suite may spawn a backend server process.
    testTimeout: 60_000,
    hookTimeout: 60_000,
  },
});
