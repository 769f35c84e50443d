"use strict";
/** Payload shapes of the service API. Field names mirror the server exactly. */
Object.defineProperty(exports, "__esModule", { value: true });
