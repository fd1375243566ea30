import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "jsdom",
    include: ["tests/**/*.test.ts"],
    // The integration suite boots the Python game server; give it room.
    testTimeout: 120_000,
    hookTimeout: 120_000,
  },
});
