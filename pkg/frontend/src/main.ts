import { ApiClient } from './api.js';
import { createApp } from './app.js';

const root = document.getElementById('app');
if (root === null) throw new Error('missing #app element');
createApp(root, { api: new ApiClient('') });
