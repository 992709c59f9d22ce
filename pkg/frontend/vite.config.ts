import { defineConfig } from 'vitest/config';

export default defineConfig({
  server: {
    // dev server proxies API calls to a locally running service
    proxy: { '/api': 'http://127.0.0.1:8777' },
  },
  build: { outDir: 'dist' },
  test: {
    environment: 'jsdom',
    include: ['tests/**/*.test.ts'],
  },
});
