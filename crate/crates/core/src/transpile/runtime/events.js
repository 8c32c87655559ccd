(function(M){var d=document;function g(i){var e=d.getElementById(i);if(!e)console.warn("maml: missing #"+i);return e}function leaf(e){return!e.children.length&&e.tagName!="IMG"&&e.tagName!="VIDEO"}M.show=function(i){var e=g(i);if(e)e.style.display=""};M.hide=function(i){var e=g(i);if(e)e.style.display="none"};M.valOf=function(i){var e=g(i);return!e?null:e.tagName=="INPUT"||e.tagName=="SELECT"?e.value:leaf(e)?e.textContent:""};M.swap=function(v,i){var e=g(i);if(!e||v==null)return;if(e.tagName=="INPUT")e.value=v;else if(e.tagName!="SELECT"&&leaf(e))e.textContent=v};function run(o){o.forEach(function(s){try{if(s[0]=="swap")M.swap(typeof s[1]=="string"?s[1]:M.valOf(s[1][1]),s[2]);else M[s[0]](s[1])}catch(x){console.warn(x)}})}M.bind=function(t){t.forEach(function(w){var f=function(){run(w["do"])},e,h;if(w.on=="timer")return setInterval(f,Math.max(1,Math.round(w.every*1e3)));e=g(w.id);if(!e)return;if(w.on=="reach"){h=function(){if(e.getBoundingClientRect().top<innerHeight){removeEventListener("scroll",h);f()}};addEventListener("scroll",h,{passive:true})}else e.addEventListener(w.on,w.on=="keydown"?function(k){if(k.key==w.key)f()}:f)})}})(MAML);
